"""Executable law suite for the box-union algebra.

The checks here pin down the algebraic backbone of the package as runnable
properties rather than proofs:

* boolean-algebra laws of n-dimensional areas (distributivity, De Morgan,
  absorption, involution, complements);
* the generator meet identity: intersecting two products is the product of
  the componentwise intersections;
* the generator complement identity: a product cube together with the two
  full-width slabs built from its factors' complements splits the plane;
* cover invariance: joining a two-argument join-preserving map over any two
  covers of the same region gives the same value, i.e. extending it along
  unions is well defined.

All randomness is seeded and reproducible; a failing trial reports a
minimized counterexample.  A falsified law is a bug in the algebra, never an
acceptable outcome.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from ._rat import Q
from .areas import (
    Cube,
    CubeFamily,
    CubicalArea,
    area_complement,
    area_equal,
    area_from_cubes,
    area_intersect,
    area_to_json,
    area_to_one_dim,
    area_union,
    empty_area,
    full_area,
    normalize,
    one_dim_to_area,
    product,
)
from .intervals import (
    EMPTY_1D,
    FULL_LINE,
    Interval,
    OneDimArea,
    area1d_union,
    interval,
    interval_intersect,
    interval_to_json,
)


class FiniteSemilatticeZ:
    """A finite join-semilattice with zero, given by an explicit join table.

    The table is checked on construction: join must be idempotent,
    commutative, and associative, with the zero neutral.
    """

    def __init__(self, elements, join_table: dict, zero):
        self.elements = tuple(elements)
        self.join_table = dict(join_table)
        self.zero = zero
        self._check()

    def join(self, x, y):
        return self.join_table[(x, y)]

    def _check(self):
        elems = self.elements
        if self.zero not in elems:
            raise ValueError("zero is not an element")
        for x in elems:
            if self.join(x, x) != x:
                raise ValueError(f"join not idempotent at {x!r}")
            if self.join(x, self.zero) != x:
                raise ValueError(f"zero not neutral at {x!r}")
            for y in elems:
                j = self.join(x, y)
                if j not in elems:
                    raise ValueError(f"join not closed at {x!r}, {y!r}")
                if j != self.join(y, x):
                    raise ValueError(f"join not commutative at {x!r}, {y!r}")
                for z in elems:
                    if self.join(self.join(x, y), z) != self.join(x, self.join(y, z)):
                        raise ValueError(f"join not associative at {x!r}, {y!r}, {z!r}")

    @classmethod
    def powerset(cls, points) -> "FiniteSemilatticeZ":
        """The powerset of a small finite set under union, zero the empty set."""
        pts = tuple(points)
        elements = [frozenset(c) for r in range(len(pts) + 1)
                    for c in itertools.combinations(pts, r)]
        table = {(x, y): x | y for x in elements for y in elements}
        return cls(elements, table, frozenset())


@dataclass(frozen=True)
class Bimorphism:
    """A map of pairs of 1-D areas that preserves unions and the empty set
    in each argument separately, together with its target's join and zero."""

    apply: Callable[[OneDimArea, OneDimArea], Any]
    join: Callable[[Any, Any], Any]
    zero: Any
    name: str = "bimorphism"


def sample_bimorphism(points) -> tuple[Bimorphism, FiniteSemilatticeZ]:
    """Membership map into the powerset of finitely many sample points.

    Sends (a, b) to the set of sample points (x, y) with x in a and y in b.
    Union-preservation in each argument is immediate from membership, which
    makes this a genuine bimorphism into the powerset semilattice.
    """
    pts = tuple(points)
    lattice = FiniteSemilatticeZ.powerset(pts)

    def apply(a: OneDimArea, b: OneDimArea):
        return frozenset(p for p in pts if a.contains(p[0]) and b.contains(p[1]))

    return Bimorphism(apply, lattice.join, lattice.zero, "powerset-membership"), lattice


def embedding_bimorphism() -> Bimorphism:
    """The canonical embedding: (a, b) goes to the product area a x b."""
    def apply(a: OneDimArea, b: OneDimArea):
        return product(one_dim_to_area(a), one_dim_to_area(b))

    return Bimorphism(apply, area_union, empty_area(2), "canonical-embedding")


def extend_bimorphism(f: Bimorphism, cover: CubeFamily):
    """Join of f over the generator cubes of a 2-D cover.

    This is the unique union-preserving extension of f evaluated on the
    cover; cover invariance (below) says the value only depends on the
    union of the cover.
    """
    if cover.dim != 2:
        raise ValueError(f"expected a 2-dimensional cover, got dimension {cover.dim}")
    value = f.zero
    for cube in cover.cubes:
        a = OneDimArea((cube.factors[0],))
        b = OneDimArea((cube.factors[1],))
        value = f.join(value, f.apply(a, b))
    return value


def spot_check_bimorphism(f: Bimorphism, pairs) -> bool:
    """Check the union/zero preservation laws of f on the given 1-D pairs."""
    pairs = list(pairs)
    for a, b in pairs:
        if f.apply(EMPTY_1D, b) != f.zero or f.apply(a, EMPTY_1D) != f.zero:
            return False
    for (a1, b1), (a2, b2) in zip(pairs, pairs[1:]):
        lhs = f.apply(area1d_union(a1, a2), b1)
        if lhs != f.join(f.apply(a1, b1), f.apply(a2, b1)):
            return False
        rhs = f.apply(a1, area1d_union(b1, b2))
        if rhs != f.join(f.apply(a1, b1), f.apply(a1, b2)):
            return False
    return True


def check_cover_invariance(f: Bimorphism, area: CubicalArea,
                           cover1: CubeFamily, cover2: CubeFamily) -> bool:
    """extend_bimorphism must agree on any two covers of the same area."""
    if not (area_equal(normalize(cover1), area) and area_equal(normalize(cover2), area)):
        raise ValueError("covers do not denote the given area")
    gens = [(OneDimArea((c.factors[0],)), OneDimArea((c.factors[1],)))
            for c in (cover1.cubes + cover2.cubes)[:4]]
    if not spot_check_bimorphism(f, gens):
        return False
    return extend_bimorphism(f, cover1) == extend_bimorphism(f, cover2)


def check_generator_meet(a1: OneDimArea, b1: OneDimArea,
                         a2: OneDimArea, b2: OneDimArea) -> bool:
    """(a1 x b1) meet (a2 x b2) equals (a1 meet a2) x (b1 meet b2)."""
    A1, B1, A2, B2 = map(one_dim_to_area, (a1, b1, a2, b2))
    lhs = area_intersect(product(A1, B1), product(A2, B2))
    rhs = product(area_intersect(A1, A2), area_intersect(B1, B2))
    return area_equal(lhs, rhs)


def check_generator_complement(a: OneDimArea, b: OneDimArea) -> bool:
    """The product a x b plus the slabs R x b' and a' x R split the plane.

    Both displayed identities are checked: the union is the whole plane and
    the intersection is empty.
    """
    if len(a.parts) != 1 or len(b.parts) != 1:
        raise ValueError("generator complement check needs single intervals")
    A, B = one_dim_to_area(a), one_dim_to_area(b)
    X = product(A, B)
    rest = area_union(product(full_area(1), area_complement(B)),
                      product(area_complement(A), full_area(1)))
    return (area_equal(area_union(X, rest), full_area(2))
            and area_equal(area_intersect(X, rest), empty_area(2)))


def _boolean_law_failures(a: CubicalArea, b: CubicalArea, c: CubicalArea) -> list[str]:
    full, empty = full_area(a.dim), empty_area(a.dim)
    a_c, b_c = area_complement(a), area_complement(b)
    ab_i, ac_i, bc_i = area_intersect(a, b), area_intersect(a, c), area_intersect(b, c)
    ab_u, ac_u, bc_u = area_union(a, b), area_union(a, c), area_union(b, c)
    checks = (
        ("meet-over-join", area_equal(area_intersect(a, bc_u), area_union(ab_i, ac_i))),
        ("join-over-meet", area_equal(area_union(a, bc_i), area_intersect(ab_u, ac_u))),
        ("de-morgan-join", area_equal(area_complement(ab_u), area_intersect(a_c, b_c))),
        ("de-morgan-meet", area_equal(area_complement(ab_i), area_union(a_c, b_c))),
        ("absorb-join", area_equal(area_union(a, ab_i), a)),
        ("absorb-meet", area_equal(area_intersect(a, ab_u), a)),
        ("involution", area_equal(area_complement(a_c), a)),
        ("complement-meet", area_equal(area_intersect(a, a_c), empty)),
        ("complement-join", area_equal(area_union(a, a_c), full)),
    )
    return [name for name, ok in checks if not ok]


def check_boolean_laws(a: CubicalArea, b: CubicalArea, c: CubicalArea) -> bool:
    """All boolean-algebra laws on one triple; must always hold."""
    if not (a.dim == b.dim == c.dim):
        raise ValueError("dimension mismatch in check_boolean_laws")
    return not _boolean_law_failures(a, b, c)


# -- seeded generators --------------------------------------------------------


def _random_interval(rng: random.Random, allow_infinite: bool = True) -> Interval:
    lo_inf = allow_infinite and rng.random() < 0.06
    hi_inf = allow_infinite and rng.random() < 0.06
    a = Q(rng.randrange(0, 17), 2)
    b = Q(rng.randrange(0, 17), 2)
    if a > b:
        a, b = b, a
    if lo_inf and hi_inf:
        return FULL_LINE
    if lo_inf:
        return interval(None, b, True, rng.random() < 0.5)
    if hi_inf:
        return interval(a, None, rng.random() < 0.5, True)
    if a == b:
        return interval(a, a)
    return interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def random_area(seed: int, dim: int, complexity: int) -> CubicalArea:
    """Deterministic pseudo-random canonical area.

    ``complexity`` cubes with endpoints on the half-integer lattice 0..8,
    random open/closed sides and occasional infinite bounds, canonicalized.
    The same seed always yields the same area.
    """
    if dim < 1 or complexity < 0:
        raise ValueError("need dim >= 1 and complexity >= 0")
    rng = random.Random(seed)
    cubes = [Cube(tuple(_random_interval(rng) for _ in range(dim)))
             for _ in range(complexity)]
    return area_from_cubes(dim, cubes)


def random_one_dim(seed: int, complexity: int) -> OneDimArea:
    return area_to_one_dim(random_area(seed, 1, complexity))


def hyperplane_refinement(cover: CubeFamily, rng: random.Random) -> CubeFamily:
    """Refine a cover by splitting cubes along randomly chosen hyperplanes.

    Each cube factor may be cut at critical values of the cover (and a few
    lattice values); a cut at t splits an interval into its part up to and
    including t and its part strictly above t, so the union is unchanged.
    """
    cuts_pool: list[list] = [[], []]
    for cube in cover.cubes:
        for k, f in enumerate(cube.factors):
            if f.lo.finite:
                cuts_pool[k].append(f.lo.value)
            if f.hi.finite:
                cuts_pool[k].append(f.hi.value)
    out = []
    for cube in cover.cubes:
        per_axis = []
        for k, f in enumerate(cube.factors):
            pieces = [f]
            pool = cuts_pool[k] + [Q(rng.randrange(0, 17), 2)]
            for _ in range(rng.randrange(0, 3)):
                t = rng.choice(pool)
                pieces = [p for piece in pieces for p in _split_at(piece, t)]
            per_axis.append(pieces)
        for fx in per_axis[0]:
            for fy in per_axis[1]:
                out.append(Cube((fx, fy)))
    return CubeFamily(cover.dim, tuple(out))


def _split_at(piece: Interval, t) -> list[Interval]:
    below = interval_intersect(piece, interval(None, t, True, True))
    above = interval_intersect(piece, interval(t, None, False, True))
    return [p for p in (below, above) if p is not None]


# -- the suite ----------------------------------------------------------------

LAW_NAMES = ("boolean-laws", "generator-meet", "generator-complement",
             "cover-invariance")


@dataclass
class LawResult:
    name: str
    trials: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class LawSuiteReport:
    seed: int
    iterations: int
    dim: int
    results: list[LawResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "iterations": self.iterations,
            "dim": self.dim,
            "passed": self.passed,
            "laws": [
                {"name": r.name, "trials": r.trials, "failures": r.failures}
                for r in self.results
            ],
        }

    def to_text(self) -> str:
        lines = [f"law suite: seed={self.seed} iters={self.iterations} dim={self.dim}"]
        for r in self.results:
            status = "ok" if r.passed else f"{len(r.failures)} FAILED"
            lines.append(f"  {r.name}: {r.trials} trials, {status}")
            for fail in r.failures:
                lines.append(f"    counterexample (trial {fail['trial']}): {fail}")
        lines.append("all laws hold" if self.passed else "LAW VIOLATIONS FOUND")
        return "\n".join(lines)


def _minimize_areas(inputs: list[CubicalArea],
                    fails: Callable[[list[CubicalArea]], bool]) -> list[CubicalArea]:
    # Greedily drop maximal cubes while the check still fails.
    current = list(inputs)
    changed = True
    while changed:
        changed = False
        for i, area in enumerate(current):
            for j in range(len(area.cubes)):
                smaller = area_from_cubes(
                    area.dim, area.cubes[:j] + area.cubes[j + 1:])
                trial = current[:i] + [smaller] + current[i + 1:]
                if fails(trial):
                    current = trial
                    changed = True
                    break
            if changed:
                break
    return current


def _boolean_trial(trial_seed: int, dim: int) -> tuple[bool, dict | None]:
    rng = random.Random(trial_seed)
    cap = max(1, 5 - dim)
    areas = [random_area(rng.randrange(2 ** 63), dim, rng.randint(0, cap))
             for _ in range(3)]
    broken = _boolean_law_failures(*areas)
    if not broken:
        return True, None
    minimized = _minimize_areas(areas, lambda xs: bool(_boolean_law_failures(*xs)))
    return False, {
        "laws": _boolean_law_failures(*minimized),
        "inputs": [area_to_json(x) for x in minimized],
    }


def _meet_trial(trial_seed: int) -> tuple[bool, dict | None]:
    rng = random.Random(trial_seed)
    quads = [random_area(rng.randrange(2 ** 63), 1, rng.randint(0, 3))
             for _ in range(4)]
    ok = check_generator_meet(*map(area_to_one_dim, quads))
    if ok:
        return True, None
    minimized = _minimize_areas(
        quads, lambda xs: not check_generator_meet(*map(area_to_one_dim, xs)))
    return False, {"inputs": [area_to_json(x) for x in minimized]}


def _complement_trial(trial_seed: int) -> tuple[bool, dict | None]:
    rng = random.Random(trial_seed)
    a = OneDimArea((_random_interval(rng),))
    b = OneDimArea((_random_interval(rng),))
    if check_generator_complement(a, b):
        return True, None
    return False, {"inputs": [interval_to_json(a.parts[0]), interval_to_json(b.parts[0])]}


def _cover_trial(trial_seed: int) -> tuple[bool, dict | None]:
    rng = random.Random(trial_seed)
    area = random_area(rng.randrange(2 ** 63), 2, rng.randint(1, 3))
    cover1 = CubeFamily(2, area.cubes)
    cover2 = hyperplane_refinement(cover1, rng)
    samples = [(Q(rng.randrange(-4, 37), 4), Q(rng.randrange(-4, 37), 4))
               for _ in range(3)]
    f, _ = sample_bimorphism(samples)
    ok = (check_cover_invariance(f, area, cover1, cover2)
          and check_cover_invariance(embedding_bimorphism(), area, cover1, cover2))
    if ok:
        return True, None
    return False, {
        "inputs": [area_to_json(area)],
        "cover_sizes": [len(cover1.cubes), len(cover2.cubes)],
        "samples": [[str(x), str(y)] for x, y in samples],
    }


def run_law_suite(seed: int, iterations: int, dim: int) -> LawSuiteReport:
    """Run every law at the given trial count; returns a deterministic report.

    Boolean laws run at the requested dimension; the generator and cover
    laws are inherently one- and two-dimensional.
    """
    if iterations < 1:
        raise ValueError("need at least one iteration")
    if not 1 <= dim <= 3:
        raise ValueError("dimension must be between 1 and 3")
    master = random.Random(seed)
    runners = {
        "boolean-laws": lambda s: _boolean_trial(s, dim),
        "generator-meet": _meet_trial,
        "generator-complement": _complement_trial,
        "cover-invariance": _cover_trial,
    }
    results = []
    for name in LAW_NAMES:
        failures = []
        for t in range(iterations):
            trial_seed = master.randrange(2 ** 63)
            ok, counter = runners[name](trial_seed)
            if not ok:
                counter.update({"trial": t, "seed": trial_seed})
                failures.append(counter)
        results.append(LawResult(name, iterations, failures))
    return LawSuiteReport(seed, iterations, dim, results)
