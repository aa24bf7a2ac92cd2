"""Deadlock and attractor analysis, and product factorization of areas.

The analyses work on the cell decomposition of the ambient box: per axis the
critical coordinates (finite bounds of the area's maximal cubes plus the
ambient bounds) cut the axis into singleton cells {v} and open gap cells
(v, w).  Every maximal cube of the area is a union of such cells, so each
cell lies wholly inside or wholly outside the area and one representative
point per cell decides membership.

Execution order is modeled by axis successors: from a cell, one step along
an axis moves to the next cell on that axis (singleton to the gap above it,
gap to the singleton closing it).  A vertex cell is a deadlock when it lies
in the model, is not the final corner, and no axis successor stays in the
model.  The doomed region (deadlock attractor) is the set of cells from
which every in-model successor chain is doomed; it is computed by backward
induction over the finite cell graph.

A grid oracle provides an independent brute-force check of the same notions
on the lattice of step multiples, straight from a program's hold intervals
and with no use of the canonical area operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._rat import Q, rat
from .areas import (
    Cube,
    CubicalArea,
    CubeFamily,
    area_equal,
    area_to_json,
    normalize,
    product_interleaved,
    project,
)
from .intervals import Interval, interval, point
from .pv import PvProgram, ambient, validate

MAX_FACTOR_BLOCK = 12  # exhaustive bipartition search cap, ~2**11 subset tests


@dataclass(frozen=True)
class CellDecomposition:
    """The arrangement of critical coordinates partitioning an ambient box.

    ``criticals[k]`` is the sorted tuple of critical values on axis k;
    ``axis_cells[k]`` alternates singletons and open gaps, ``2 * len(criticals[k]) - 1``
    cells, singletons at even indices.  An n-cell is an index tuple.
    """

    criticals: tuple[tuple[Q, ...], ...]
    axis_cells: tuple[tuple[Interval, ...], ...]
    axis_reps: tuple[tuple[Q, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.criticals)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(cells) for cells in self.axis_cells)

    def cell_cube(self, idx: tuple[int, ...]) -> Cube:
        return Cube(tuple(self.axis_cells[k][i] for k, i in enumerate(idx)))

    def rep_point(self, idx: tuple[int, ...]) -> tuple[Q, ...]:
        return tuple(self.axis_reps[k][i] for k, i in enumerate(idx))

    def indices(self):
        return itertools.product(*(range(s) for s in self.shape))

    def is_vertex(self, idx: tuple[int, ...]) -> bool:
        return all(i % 2 == 0 for i in idx)

    @property
    def final_index(self) -> tuple[int, ...]:
        return tuple(s - 1 for s in self.shape)


def build_cells(a: CubicalArea, ambient_box: Cube) -> CellDecomposition:
    """Cell decomposition of the ambient box refined by the area's bounds."""
    if a.dim != ambient_box.dim:
        raise ValueError(f"dimension mismatch: area {a.dim}, ambient {ambient_box.dim}")
    criticals, cells, reps = [], [], []
    for k, factor in enumerate(ambient_box.factors):
        if not (factor.lo.finite and factor.hi.finite
                and factor.lo.closed and factor.hi.closed):
            raise ValueError("ambient box must be closed and bounded")
        vals = {factor.lo.value, factor.hi.value}
        for cube in a.cubes:
            f = cube.factors[k]
            if f.lo.finite:
                vals.add(f.lo.value)
            if f.hi.finite:
                vals.add(f.hi.value)
        vs = tuple(sorted(vals))
        axis_cells: list[Interval] = [point(vs[0])]
        axis_reps: list[Q] = [vs[0]]
        for lo, hi in zip(vs, vs[1:]):
            axis_cells.append(interval(lo, hi, False, False))
            axis_reps.append((lo + hi) / 2)
            axis_cells.append(point(hi))
            axis_reps.append(hi)
        criticals.append(vs)
        cells.append(tuple(axis_cells))
        reps.append(tuple(axis_reps))
    return CellDecomposition(tuple(criticals), tuple(cells), tuple(reps))


def _membership(a: CubicalArea, cells: CellDecomposition) -> dict[tuple[int, ...], bool]:
    return {idx: a.contains_point(cells.rep_point(idx)) for idx in cells.indices()}


def find_deadlocks(model_area: CubicalArea, ambient_box: Cube) -> list[tuple[Q, ...]]:
    """All stuck states: in-model vertex cells, not final, no way forward.

    A vertex can move along an axis only into the open gap cell just above
    it; when every such gap is outside the model (or outside the ambient
    box), the state is a deadlock.
    """
    cells = build_cells(model_area, ambient_box)
    inside = _membership(model_area, cells)
    shape, final = cells.shape, cells.final_index
    out = []
    for idx in cells.indices():
        if not cells.is_vertex(idx) or idx == final or not inside[idx]:
            continue
        blocked = True
        for k in range(cells.dim):
            if idx[k] + 1 < shape[k]:
                succ = idx[:k] + (idx[k] + 1,) + idx[k + 1:]
                if inside[succ]:
                    blocked = False
                    break
        if blocked:
            out.append(cells.rep_point(idx))
    return sorted(out)


def doomed_region(model_area: CubicalArea, ambient_box: Cube) -> CubicalArea:
    """The deadlock attractor: states whose every run ends in a deadlock.

    Backward induction over cells: a non-final in-model cell is doomed when
    each of its in-model axis successors is doomed (in particular when it
    has none, the deadlock base case).  Successors point upward in the cell
    index order, so one sweep in decreasing lexicographic order suffices.
    """
    cells = build_cells(model_area, ambient_box)
    inside = _membership(model_area, cells)
    shape, final = cells.shape, cells.final_index
    doomed: dict[tuple[int, ...], bool] = {}
    for idx in sorted(cells.indices(), reverse=True):
        if not inside[idx] or idx == final:
            doomed[idx] = False
            continue
        verdict = True
        for k in range(cells.dim):
            if idx[k] + 1 < shape[k]:
                succ = idx[:k] + (idx[k] + 1,) + idx[k + 1:]
                if inside[succ] and not doomed[succ]:
                    verdict = False
                    break
        doomed[idx] = verdict
    cubes = tuple(cells.cell_cube(idx) for idx in cells.indices() if doomed[idx])
    return normalize(CubeFamily(cells.dim, cubes))


def factorize(a: CubicalArea) -> list[tuple[tuple[int, ...], CubicalArea]]:
    """Finest split of the axes such that the area is the product of its
    projections onto the parts (with coordinates interleaved back in place).

    Each block of the current partition is tested against every bipartition;
    blocks that split are recursed into.  Search is exhaustive, capped at
    MAX_FACTOR_BLOCK axes per block.  The returned factor areas live in
    their block's own coordinate order.
    """
    if a.dim > MAX_FACTOR_BLOCK:
        raise ValueError(
            f"factorization search is capped at {MAX_FACTOR_BLOCK} axes, got {a.dim}")

    def split(axes: tuple[int, ...], block: CubicalArea):
        n = len(axes)
        if n == 1:
            return [(axes, block)]
        # subsets of positions 1..n-1, always keeping position 0 in the left part
        for bits in range(1, 2 ** (n - 1)):
            right = tuple(p for p in range(1, n) if bits >> (p - 1) & 1)
            left = tuple(p for p in range(n) if p not in right)
            la, ra = project(block, left), project(block, right)
            if area_equal(product_interleaved([(left, la), (right, ra)]), block):
                return (split(tuple(axes[p] for p in left), la)
                        + split(tuple(axes[p] for p in right), ra))
        return [(axes, block)]

    return sorted(split(tuple(range(a.dim)), a))


@dataclass(frozen=True)
class AnalysisReport:
    """Deadlocks, doomed region, and factorization of one program model."""

    deadlocks: tuple[tuple[Q, ...], ...]
    doomed: CubicalArea
    factorization: tuple[tuple[tuple[int, ...], CubicalArea], ...]


def analyze(prog: PvProgram) -> AnalysisReport:
    from .pv import model as _model

    m = _model(prog)
    box = ambient(prog)
    return AnalysisReport(
        deadlocks=tuple(find_deadlocks(m, box)),
        doomed=doomed_region(m, box),
        factorization=tuple(factorize(m)),
    )


def report_to_json(report: AnalysisReport) -> dict:
    return {
        "deadlocks": [[str(x) for x in p] for p in report.deadlocks],
        "doomed": area_to_json(report.doomed),
        "factorization": [
            {"axes": list(axes), "factor": area_to_json(area)}
            for axes, area in report.factorization
        ],
    }


class GridOracle:
    """Brute-force reference analyses on the lattice of step multiples.

    Membership is decided directly from the program's hold intervals (a
    point is forbidden when some pair of processes is inside a common
    resource's hold spans), with no canonical-area machinery involved.
    Deadlock and doomed queries run backward induction over the single-axis
    step successor graph of the grid.
    """

    def __init__(self, prog: PvProgram, step):
        step = rat(step)
        if step <= 0 or (1 / step).denominator != 1:
            raise ValueError(f"step must divide 1, got {step}")
        holds = validate(prog)
        self.step = step
        self.tops = tuple(rat(len(body) + 1) for body in prog.main_bodies)
        self.dim = len(self.tops)
        self.boxes = []
        for i, a in enumerate(holds):
            for b in holds[i + 1:]:
                if a.resource == b.resource and a.process != b.process:
                    self.boxes.append(((a.process, rat(a.p_pos), rat(a.v_pos)),
                                       (b.process, rat(b.p_pos), rat(b.v_pos))))
        self._doomed: dict[tuple, bool] | None = None

    def membership(self, p) -> bool:
        """Model membership of an arbitrary rational point."""
        p = tuple(rat(x) for x in p)
        if len(p) != self.dim:
            raise ValueError("wrong point dimension")
        if any(x < 0 or x > top for x, top in zip(p, self.tops)):
            return False
        for (i, plo, phi), (j, qlo, qhi) in self.boxes:
            if plo < p[i] < phi and qlo < p[j] < qhi:
                return False
        return True

    def grid_points(self):
        axes = [[k * self.step for k in range(int(top / self.step) + 1)]
                for top in self.tops]
        return itertools.product(*axes)

    def _successors(self, p):
        for k in range(self.dim):
            q = p[:k] + (p[k] + self.step,) + p[k + 1:]
            if q[k] <= self.tops[k]:
                yield q

    def deadlocks(self) -> list[tuple]:
        final = self.tops
        out = []
        for p in self.grid_points():
            if p == final or not self.membership(p):
                continue
            if not any(self.membership(q) for q in self._successors(p)):
                out.append(p)
        return sorted(out)

    def doomed(self, p) -> bool:
        """Is every monotone grid run from p trapped, ending in a deadlock?"""
        if self._doomed is None:
            table: dict[tuple, bool] = {}
            final = self.tops
            for p0 in sorted(self.grid_points(), reverse=True):
                if p0 == final or not self.membership(p0):
                    table[p0] = False
                    continue
                table[p0] = all(table[q] or not self.membership(q)
                                for q in self._successors(p0))
            self._doomed = table
        p = tuple(rat(x) for x in p)
        return self._doomed[p]

    def doomed_points(self) -> list[tuple]:
        self.doomed(tuple(0 for _ in self.tops))
        return sorted(p for p, d in self._doomed.items() if d)


def grid_oracle(prog: PvProgram, step) -> GridOracle:
    """Build the brute-force oracle for a program at the given grid step."""
    return GridOracle(prog, step)
