"""Exact algebra of n-dimensional box unions (cubical areas).

An n-cube is a product of n nonempty intervals; a cubical area is a set
admitting a finite cover by such cubes.  The canonical form of an area is the
set of ALL its maximal subcubes, which is unique and makes equality of areas
a structural comparison.  All boolean set operations stay inside the class of
cubical areas, so the areas of a fixed dimension form a boolean algebra.

Canonicalization works by complementing twice.  The complement of a single
cube is a union of at most 2n axis slabs (one per finite bound), and the
pairwise intersections of two families that each contain every maximal
subcube of their unions again contain every maximal subcube of the
intersection.  Folding that step over a family, discarding dominated cubes
as we go, therefore computes exactly the maximal subcubes of the complement;
doing it twice yields the canonical form of the union itself.

Everything here is immutable and pure; values can be shared freely across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ._rat import rat
from .intervals import (
    FULL_LINE,
    Interval,
    OneDimArea,
    _from_keys,
    interval_from_json,
    interval_to_json,
    NEG_INF,
    POS_INF,
    _HI_CLOSED,
    _HI_OPEN,
    _LO_CLOSED,
    _LO_OPEN,
)

# Kernel representation: an interval is a (lo_key, hi_key) pair, a cube a
# tuple of such pairs.  Plain tuples keep the inner loops at C speed.
_FULL_K = ((NEG_INF, _LO_OPEN), (POS_INF, _HI_CLOSED))


def _kisect(a: tuple, b: tuple) -> Optional[tuple]:
    out = []
    for (alo, ahi), (blo, bhi) in zip(a, b):
        lo = alo if alo >= blo else blo
        hi = ahi if ahi <= bhi else bhi
        if not lo <= hi:
            return None
        out.append((lo, hi))
    return tuple(out)


def _kcontains(big: tuple, small: tuple) -> bool:
    for (blo, bhi), (slo, shi) in zip(big, small):
        if blo > slo or shi > bhi:
            return False
    return True


def _kcomplement_cube(c: tuple) -> list[tuple]:
    # Maximal subcubes of the complement: a full-space slab per finite bound.
    n = len(c)
    out = []
    for k, (lo, hi) in enumerate(c):
        if lo[0] != NEG_INF:
            piece = ((NEG_INF, _LO_OPEN),
                     (lo[0], _HI_OPEN if lo[1] == _LO_CLOSED else _HI_CLOSED))
            out.append(tuple(piece if i == k else _FULL_K for i in range(n)))
        if hi[0] != POS_INF:
            piece = ((hi[0], _LO_OPEN if hi[1] == _HI_CLOSED else _LO_CLOSED),
                     (POS_INF, _HI_CLOSED))
            out.append(tuple(piece if i == k else _FULL_K for i in range(n)))
    return out


def _kmax_filter(cubes: Iterable[tuple]) -> list[tuple]:
    # Keep only inclusion-maximal cubes (deduplicated first: two distinct
    # cubes cannot contain each other).
    distinct = list(set(cubes))
    out = []
    for i, c in enumerate(distinct):
        for j, d in enumerate(distinct):
            if i != j and _kcontains(d, c):
                break
        else:
            out.append(c)
    return out


def _kcomplement_family(dim: int, cubes: Iterable[tuple]) -> list[tuple]:
    # Exactly the maximal subcubes of the complement of the union.
    acc = [tuple(_FULL_K for _ in range(dim))]
    for c in cubes:
        parts = _kcomplement_cube(c)
        acc = _kmax_filter(
            [r for a in acc for p in parts if (r := _kisect(a, p)) is not None])
        if not acc:
            return []
    return acc


def _knormalize(dim: int, cubes: Iterable[tuple]) -> list[tuple]:
    return _kcomplement_family(dim, _kcomplement_family(dim, cubes))


@dataclass(frozen=True)
class Cube:
    """A product of nonempty intervals, one per coordinate axis."""

    factors: tuple[Interval, ...]
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.factors:
            raise ValueError("cubes have dimension >= 1")
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(
            self, "_key", tuple((f._lo_key, f._hi_key) for f in self.factors))

    def __hash__(self):
        return hash(self.factors)

    @property
    def dim(self) -> int:
        return len(self.factors)

    def contains_point(self, p: Sequence) -> bool:
        if len(p) != self.dim:
            raise ValueError(f"point has {len(p)} coordinates, cube is {self.dim}-dimensional")
        return all(f.contains(x) for f, x in zip(self.factors, p))

    def contains_cube(self, other: "Cube") -> bool:
        return _kcontains(self._key, other._key)

    def __str__(self):
        return " x ".join(f"({f})" for f in self.factors)


def _cube_from_key(kcube: tuple) -> Cube:
    return Cube(tuple(_from_keys(lo, hi) for lo, hi in kcube))


def full_cube(dim: int) -> Cube:
    """The whole space as a cube."""
    return Cube((FULL_LINE,) * dim)


@dataclass(frozen=True)
class CubeFamily:
    """A finite family of same-dimension cubes; denotes the union of its members."""

    dim: int
    cubes: tuple[Cube, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "cubes", tuple(self.cubes))
        for c in self.cubes:
            if c.dim != self.dim:
                raise ValueError(f"cube of dimension {c.dim} in a {self.dim}-dimensional family")

    def contains_point(self, p: Sequence) -> bool:
        p = tuple(rat(x) for x in p)
        return any(c.contains_point(p) for c in self.cubes)


@dataclass(frozen=True)
class CubicalArea:
    """A cubical area in canonical form: the set of all its maximal subcubes.

    ``cubes`` is an antichain under componentwise inclusion, sorted by bound
    keys so equal areas compare (and serialize) identically.  Build instances
    through :func:`normalize`, :func:`area_from_cubes`, or the set operations
    below rather than directly.
    """

    dim: int
    cubes: tuple[Cube, ...]

    @property
    def is_empty(self) -> bool:
        return not self.cubes

    def contains_point(self, p: Sequence) -> bool:
        if len(p) != self.dim:
            raise ValueError(f"point has {len(p)} coordinates, area is {self.dim}-dimensional")
        p = tuple(rat(x) for x in p)
        return any(c.contains_point(p) for c in self.cubes)

    def __str__(self):
        if not self.cubes:
            return "(empty)"
        return "\n".join(str(c) for c in self.cubes)


def _area_from_kcubes(dim: int, kcubes: Iterable[tuple]) -> CubicalArea:
    return CubicalArea(dim, tuple(_cube_from_key(k) for k in sorted(kcubes)))


def empty_area(dim: int) -> CubicalArea:
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    return CubicalArea(dim, ())


def full_area(dim: int) -> CubicalArea:
    return CubicalArea(dim, (full_cube(dim),))


def _check_dims(a, b, what: str):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch in {what}: {a.dim} vs {b.dim}")


def cube_intersect(a: Cube, b: Cube) -> Optional[Cube]:
    """Componentwise intersection; ``None`` when any component is empty."""
    _check_dims(a, b, "cube_intersect")
    k = _kisect(a._key, b._key)
    return None if k is None else _cube_from_key(k)


def cube_complement(a: Cube) -> CubeFamily:
    """The maximal subcubes of the complement of ``a`` in the whole space.

    One slab per finite bound of each factor, so at most 2n cubes, with
    equality exactly when every factor has two finite bounds.
    """
    return CubeFamily(a.dim, tuple(_cube_from_key(k) for k in _kcomplement_cube(a._key)))


def family_refines(c: CubeFamily, d: CubeFamily) -> bool:
    """True when every cube of ``c`` is contained in some cube of ``d``."""
    _check_dims(c, d, "family_refines")
    dkeys = [x._key for x in d.cubes]
    return all(any(_kcontains(dk, ck._key) for dk in dkeys) for ck in c.cubes)


def normalize(c: CubeFamily) -> CubicalArea:
    """Canonical form of the union of a family: all of its maximal subcubes."""
    return _area_from_kcubes(c.dim, _knormalize(c.dim, [x._key for x in c.cubes]))


def area_from_cubes(dim: int, cubes: Iterable[Cube]) -> CubicalArea:
    return normalize(CubeFamily(dim, tuple(cubes)))


def area_intersect(a: CubicalArea, b: CubicalArea) -> CubicalArea:
    """Intersection of canonical areas, canonical.

    Pairwise cube intersections of two canonical forms contain every maximal
    subcube of the intersection, so a maximality filter suffices; no full
    renormalization is needed.
    """
    _check_dims(a, b, "area_intersect")
    pairs = [r for x in a.cubes for y in b.cubes
             if (r := _kisect(x._key, y._key)) is not None]
    return _area_from_kcubes(a.dim, _kmax_filter(pairs))


def area_complement(a: CubicalArea) -> CubicalArea:
    """Complement within the whole space, canonical."""
    return _area_from_kcubes(a.dim, _kcomplement_family(a.dim, [x._key for x in a.cubes]))


def area_union(a: CubicalArea, b: CubicalArea) -> CubicalArea:
    _check_dims(a, b, "area_union")
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    return _area_from_kcubes(
        a.dim, _knormalize(a.dim, [x._key for x in a.cubes + b.cubes]))


def area_equal(a: CubicalArea, b: CubicalArea) -> bool:
    """Exact set equality; sound and complete on canonical forms."""
    _check_dims(a, b, "area_equal")
    return a.cubes == b.cubes


def contains_point(a: CubicalArea, p: Sequence) -> bool:
    return a.contains_point(p)


def product(a: CubicalArea, b: CubicalArea) -> CubicalArea:
    """Cartesian product, with the axes of ``b`` following those of ``a``."""
    return product_interleaved(
        [(range(a.dim), a), (range(a.dim, a.dim + b.dim), b)])


def product_interleaved(blocks: Sequence[tuple[Sequence[int], CubicalArea]]) -> CubicalArea:
    """Cartesian product of areas placed on interleaved coordinate axes.

    ``blocks`` assigns each factor area a sorted tuple of target axes; the
    axis sets must partition the full coordinate range.  The maximal cubes
    of a product are exactly the products of maximal cubes, so the result is
    canonical without renormalization.
    """
    placed: dict[int, tuple[int, int]] = {}
    for bi, (axes, area) in enumerate(blocks):
        axes = tuple(axes)
        if list(axes) != sorted(set(axes)):
            raise ValueError(f"block axes must be sorted and distinct: {axes}")
        if len(axes) != area.dim:
            raise ValueError(f"block of {len(axes)} axes holds a {area.dim}-dimensional area")
        for pos, ax in enumerate(axes):
            if ax in placed:
                raise ValueError(f"axis {ax} assigned twice")
            placed[ax] = (bi, pos)
    dim = len(placed)
    if dim < 1:
        raise ValueError("empty product")
    if sorted(placed) != list(range(dim)):
        raise ValueError(f"block axes must partition 0..{dim - 1}")

    combos = [()]
    for _, area in blocks:
        combos = [prefix + (c,) for prefix in combos for c in area.cubes]
    out = []
    for choice in combos:
        factors = tuple(choice[placed[ax][0]].factors[placed[ax][1]] for ax in range(dim))
        out.append(Cube(factors))
    return CubicalArea(dim, tuple(sorted(out, key=lambda c: c._key)))


def project(a: CubicalArea, coords: Sequence[int]) -> CubicalArea:
    """Project onto a nonempty subset of axes (the image of the area)."""
    coords = tuple(coords)
    if not coords:
        raise ValueError("projection needs at least one axis")
    if list(coords) != sorted(set(coords)):
        raise ValueError(f"projection axes must be sorted and distinct: {coords}")
    if coords[0] < 0 or coords[-1] >= a.dim:
        raise ValueError(f"projection axes {coords} out of range for dimension {a.dim}")
    shadows = [tuple(c._key[i] for i in coords) for c in a.cubes]
    return _area_from_kcubes(len(coords), _knormalize(len(coords), shadows))


# -- 1-D bridging -------------------------------------------------------------


def one_dim_to_area(a: OneDimArea) -> CubicalArea:
    """A canonical 1-D union of intervals as a 1-dimensional area."""
    return CubicalArea(1, tuple(Cube((p,)) for p in a.parts))


def area_to_one_dim(a: CubicalArea) -> OneDimArea:
    if a.dim != 1:
        raise ValueError(f"expected a 1-dimensional area, got dimension {a.dim}")
    return OneDimArea(tuple(c.factors[0] for c in a.cubes))


def interval_to_area(i: Interval) -> CubicalArea:
    return CubicalArea(1, (Cube((i,)),))


# -- JSON ---------------------------------------------------------------------


def area_to_json(a: CubicalArea) -> dict:
    """Encode as {"dim": n, "cubes": [[interval, ...], ...]}, canonical order."""
    return {
        "dim": a.dim,
        "cubes": [[interval_to_json(f) for f in c.factors] for c in a.cubes],
    }


def area_from_json(obj: dict) -> CubicalArea:
    dim = int(obj["dim"])
    cubes = []
    for row in obj["cubes"]:
        if len(row) != dim:
            raise ValueError(f"cube with {len(row)} factors in a {dim}-dimensional area")
        cubes.append(Cube(tuple(interval_from_json(f) for f in row)))
    return area_from_cubes(dim, cubes)
