"""Shared fixtures: program corpus, independent brute-force oracles, generators.

The oracles here deliberately avoid the library's canonicalization machinery:
membership goes through raw per-interval containment on the input cubes, and
maximal boxes are enumerated over the arrangement of critical coordinates.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from cubicalc import Cube, CubicalArea, interval
from cubicalc._rat import Q

CROSSED_LOCKS = "T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb\n"

CORPUS: dict[str, str] = {
    "crossed-locks": CROSSED_LOCKS,
    "single": "T = Pa.Va\n",
    "independent-pair": "T1 = Pa.Va\nT2 = Pb.Vb\n",
    "crossed-plus-free": CROSSED_LOCKS + "T3 = Pc.Vc\n",
    "two-pairs": ("A1 = Pa.Va\nA2 = Pa.Va\nB1 = Pb.Vb\nB2 = Pb.Vb\n"
                  "main = A1 | A2 | B1 | B2\n"),
    "two-pairs-interleaved": ("A1 = Pa.Va\nA2 = Pa.Va\nB1 = Pb.Vb\nB2 = Pb.Vb\n"
                              "main = A1 | B1 | A2 | B2\n"),
    "three-singletons": "T1 = Pa.Va\nT2 = Pb.Vb\nT3 = Pc.Vc\n",
    "pair-plus-two": CROSSED_LOCKS + "T3 = Pc.Vc\nT4 = Pd.Vd.Pd.Vd\n",
    "parenthesized": "X = P(sem).V(sem)\nY = P(sem).V(sem)\n",
    "triple-chain": "T1 = Pa.Va\nT2 = Pa.Va.Pb.Vb\nT3 = Pb.Vb\n",
}

# programs whose resource groups split into at least two blocks (criterion 6)
DISJOINT_GROUPS = (
    "independent-pair",
    "crossed-plus-free",
    "two-pairs",
    "two-pairs-interleaved",
    "three-singletons",
    "pair-plus-two",
)


def random_pv_program(seed: int, n_procs: int = 2, max_len: int = 6,
                      resources: str = "ab") -> str:
    """A seeded well-bracketed program: per process an even-length P/V body."""
    rng = random.Random(seed)
    lines = []
    for i in range(n_procs):
        target = 2 * rng.randint(1, max_len // 2)
        held: list[str] = []
        body: list[str] = []
        while len(body) < target:
            must_close = len(held) >= target - len(body)
            free = [r for r in resources if r not in held]
            if held and (must_close or not free or rng.random() < 0.45):
                r = rng.choice(held)
                held.remove(r)
                body.append(f"V{r}")
            else:
                r = rng.choice(free)
                held.append(r)
                body.append(f"P{r}")
        lines.append(f"T{i + 1} = " + ".".join(body))
    return "\n".join(lines) + "\n"


def raw_membership(cubes, p) -> bool:
    """Union membership straight off the given cubes (no canonical form)."""
    return any(c.contains_point(p) for c in cubes)


def axis_criticals(cubes, axis: int) -> list:
    vals = set()
    for c in cubes:
        f = c.factors[axis]
        if f.lo.finite:
            vals.add(f.lo.value)
        if f.hi.finite:
            vals.add(f.hi.value)
    return sorted(vals)


def sample_axis(values) -> list:
    """Critical values, midpoints of consecutive ones, and points beyond."""
    values = sorted(set(values))
    if not values:
        return [Q(0)]
    out = [values[0] - 1]
    for lo, hi in zip(values, values[1:]):
        out.extend((lo, (lo + hi) / 2))
    out.extend((values[-1], values[-1] + 1))
    return out


def sample_grid(dim: int, *cube_sets):
    """A grid of sample points hitting every arrangement cell of the inputs."""
    axes = []
    for k in range(dim):
        vals = []
        for cubes in cube_sets:
            vals.extend(axis_criticals(cubes, k))
        axes.append(sample_axis(vals))
    return list(itertools.product(*axes))


def brute_force_maximal_boxes(member, criticals_per_axis) -> set[Cube]:
    """All maximal boxes of a set, found by exhaustive search.

    ``member`` decides point membership; ``criticals_per_axis`` must contain
    every coordinate at which the set's boundary can sit (the set must be a
    union of the induced arrangement cells, and must lie within the critical
    range).  Candidate boxes are runs of consecutive cells per axis; a box
    is kept when all its cells are inside and no one-cell extension is.
    """
    axes = []
    for vals in criticals_per_axis:
        vals = sorted(vals)
        cells = [("pt", vals[0], vals[0])]
        reps = [vals[0]]
        for lo, hi in zip(vals, vals[1:]):
            cells.append(("gap", lo, hi))
            reps.append((Fraction(lo) + Fraction(hi)) / 2)
            cells.append(("pt", hi, hi))
            reps.append(hi)
        axes.append((cells, reps))

    dim = len(axes)
    cell_in = {}
    for idx in itertools.product(*(range(len(c)) for c, _ in axes)):
        cell_in[idx] = member(tuple(axes[k][1][i] for k, i in enumerate(idx)))

    def run_ok(lo_hi):
        return all(cell_in[idx] for idx in itertools.product(
            *(range(lo, hi + 1) for lo, hi in lo_hi)))

    def run_interval(axis, lo, hi):
        cells, _ = axes[axis]
        kind_lo, vlo, _ = cells[lo]
        kind_hi, _, vhi = cells[hi]
        return interval(vlo, vhi, kind_lo == "pt", kind_hi == "pt")

    out = set()
    n_cells = [len(c) for c, _ in axes]
    for lo_hi in itertools.product(*(
            [(lo, hi) for lo in range(n) for hi in range(lo, n)] for n in n_cells)):
        if not run_ok(lo_hi):
            continue
        extendable = False
        for k in range(dim):
            for delta, end in ((-1, 0), (1, 1)):
                lo, hi = lo_hi[k]
                nlo, nhi = (lo + delta, hi) if end == 0 else (lo, hi + delta)
                if nlo < 0 or nhi >= n_cells[k]:
                    continue
                cand = lo_hi[:k] + ((nlo, nhi),) + lo_hi[k + 1:]
                if run_ok(cand):
                    extendable = True
                    break
            if extendable:
                break
        if not extendable:
            out.add(Cube(tuple(run_interval(k, lo, hi)
                               for k, (lo, hi) in enumerate(lo_hi))))
    return out


def area_set(a: CubicalArea) -> set[Cube]:
    return set(a.cubes)
