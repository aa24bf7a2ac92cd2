"""Front end for linear lock/unlock (PV) programs.

A program is a set of named sequential processes, each a dot-separated list
of lock (``P``) and unlock (``V``) actions on named mutexes, plus a ``main``
line composing processes in parallel:

    T1 = Pa.Pb.Vb.Va
    T2 = Pb.Pa.Va.Vb
    main = T1 | T2

Actions write the resource either as a suffix (``Pa`` locks ``a``, ``Pab``
locks ``ab``) or parenthesized (``P(sem)``).  ``#`` starts a comment; blank
lines are ignored; without a ``main`` line all processes run in declaration
order.

The geometric state space places instruction k of a process at coordinate k
(1-based) on that process's axis, with the axis running from 0 to one past
the last instruction.  Two processes holding the same mutex at once is
inconsistent: each pair of overlapping holds contributes a forbidden box,
open in the two hold spans and spanning the whole state range on every other
axis.  The model of the program is the ambient box minus the forbidden
region.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .areas import (
    Cube,
    CubicalArea,
    CubeFamily,
    area_complement,
    area_intersect,
    normalize,
)
from .intervals import interval


class PvError(Exception):
    """Problem in a PV source file, locatable as file:line:col."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def locate(self, filename: str) -> str:
        return f"{filename}:{self.line}:{self.col}: {self.message}"


class PvSyntaxError(PvError):
    pass


class PvValidationError(PvError):
    """A lock discipline violation, tied to the offending action."""

    def __init__(self, message: str, line: int, col: int,
                 process: str, resource: str, position: int):
        super().__init__(message, line, col)
        self.process = process
        self.resource = resource
        self.position = position


@dataclass(frozen=True)
class Action:
    op: str  # "P" or "V"
    resource: str


@dataclass(frozen=True)
class Process:
    name: str
    body: tuple[Action, ...]
    # source locations of the name and of each action, for diagnostics only
    name_loc: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)
    body_locs: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class PvProgram:
    processes: tuple[Process, ...]
    main: tuple[str, ...]

    def process(self, name: str) -> Process:
        for p in self.processes:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def main_bodies(self) -> tuple[tuple[Action, ...], ...]:
        return tuple(self.process(name).body for name in self.main)


@dataclass(frozen=True)
class HoldInterval:
    """The span during which one process instance holds one mutex.

    ``process`` indexes into main (the coordinate axis); ``p_pos`` and
    ``v_pos`` are the 1-based instruction positions of the lock and the
    matching unlock.
    """

    process: int
    resource: str
    p_pos: int
    v_pos: int


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[=.|()]")
_WS = re.compile(r"\s*")


def _tokenize(text: str, lineno: int) -> list[tuple[str, int]]:
    text = text.split("#", 1)[0]
    tokens, pos = [], 0
    while True:
        pos = _WS.match(text, pos).end()
        if pos >= len(text):
            return tokens
        m = _TOKEN.match(text, pos)
        if not m:
            raise PvSyntaxError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        tokens.append((m.group(), pos + 1))
        pos = m.end()


def parse(source: str) -> PvProgram:
    """Parse PV source text; raises PvSyntaxError with line and column."""
    processes: list[Process] = []
    seen: dict[str, int] = {}
    main: tuple[str, ...] | None = None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        if len(tokens) < 2 or tokens[1][0] != "=":
            tok, col = tokens[min(1, len(tokens) - 1)]
            raise PvSyntaxError(f"expected '=' after {tokens[0][0]!r}", lineno, col)
        name, name_col = tokens[0]
        if not name[0].isalpha() and name[0] != "_":
            raise PvSyntaxError(f"expected a name, got {name!r}", lineno, name_col)
        rest = tokens[2:]
        if not rest:
            raise PvSyntaxError("empty right-hand side", lineno,
                                tokens[1][1] + 1)
        if name == "main":
            if main is not None:
                raise PvSyntaxError("duplicate main", lineno, name_col)
            main = _parse_main(rest, lineno)
        else:
            if name in seen:
                raise PvSyntaxError(f"duplicate process name {name!r}", lineno, name_col)
            seen[name] = lineno
            body, locs = _parse_body(rest, lineno)
            processes.append(Process(name, body, (lineno, name_col), locs))

    if main is None:
        main = tuple(p.name for p in processes)
    else:
        for entry in main:
            if entry not in seen:
                raise PvSyntaxError(f"unknown process {entry!r} in main",
                                    *_main_loc(source, entry))
    return PvProgram(tuple(processes), main)


def _main_loc(source: str, entry: str) -> tuple[int, int]:
    for lineno, raw in enumerate(source.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if stripped.strip().startswith("main"):
            col = stripped.find(entry)
            return lineno, col + 1 if col >= 0 else 1
    return 1, 1


def _parse_main(tokens: list[tuple[str, int]], lineno: int) -> tuple[str, ...]:
    names, expect_name = [], True
    for tok, col in tokens:
        if expect_name:
            if tok in "=.|()":
                raise PvSyntaxError("expected a process name", lineno, col)
            names.append(tok)
        elif tok != "|":
            raise PvSyntaxError(f"expected '|', got {tok!r}", lineno, col)
        expect_name = not expect_name
    if expect_name:
        raise PvSyntaxError("dangling '|' in main", lineno, tokens[-1][1])
    return tuple(names)


def _parse_body(tokens: list[tuple[str, int]],
                lineno: int) -> tuple[tuple[Action, ...], tuple[tuple[int, int], ...]]:
    actions: list[Action] = []
    locs: list[tuple[int, int]] = []
    i = 0
    while True:
        if i >= len(tokens):
            raise PvSyntaxError("expected an action", lineno,
                                tokens[-1][1] if tokens else 1)
        tok, col = tokens[i]
        if tok[0] not in "PV":
            raise PvSyntaxError(f"expected a P or V action, got {tok!r}", lineno, col)
        op = tok[0]
        if len(tok) > 1:
            resource = tok[1:]
            i += 1
        else:
            if (i + 4 > len(tokens) or tokens[i + 1][0] != "("
                    or tokens[i + 3][0] != ")"):
                raise PvSyntaxError(f"expected '(resource)' after {op!r}", lineno, col)
            resource = tokens[i + 2][0]
            if not resource[0].isalpha() and resource[0] != "_":
                raise PvSyntaxError("expected a resource name", lineno, tokens[i + 2][1])
            i += 4
        actions.append(Action(op, resource))
        locs.append((lineno, col))
        if i == len(tokens):
            return tuple(actions), tuple(locs)
        tok, col = tokens[i]
        if tok != ".":
            raise PvSyntaxError(f"expected '.', got {tok!r}", lineno, col)
        i += 1


def _holds_of(proc: Process) -> list[tuple[str, int, int]]:
    """(resource, p_pos, v_pos) holds of one process; raises on bad bracketing."""
    open_pos: dict[str, int] = {}
    holds: list[tuple[str, int, int]] = []
    for pos, action in enumerate(proc.body, start=1):
        line, col = proc.body_locs[pos - 1] if proc.body_locs else (0, 0)
        if action.op == "P":
            if action.resource in open_pos:
                raise PvValidationError(
                    f"process {proc.name!r} locks {action.resource!r} while already held",
                    line, col, proc.name, action.resource, pos)
            open_pos[action.resource] = pos
        else:
            if action.resource not in open_pos:
                raise PvValidationError(
                    f"process {proc.name!r} unlocks {action.resource!r} without holding it",
                    line, col, proc.name, action.resource, pos)
            holds.append((action.resource, open_pos.pop(action.resource), pos))
    if open_pos:
        resource, pos = min(open_pos.items(), key=lambda kv: kv[1])
        line, col = proc.body_locs[pos - 1] if proc.body_locs else (0, 0)
        raise PvValidationError(
            f"process {proc.name!r} still holds {resource!r} at end",
            line, col, proc.name, resource, pos)
    return sorted(holds, key=lambda h: h[1])


def validate(prog: PvProgram) -> list[HoldInterval]:
    """Check the lock discipline of every process; return the holds per axis.

    Per process and resource the actions must alternate P, V, ... starting
    with P and ending with V.  The returned holds are indexed by position in
    main, one entry per (axis, resource, lock span).
    """
    by_name = {}
    for proc in prog.processes:
        by_name[proc.name] = _holds_of(proc)
    out = []
    for axis, name in enumerate(prog.main):
        if name not in by_name:
            raise PvValidationError(f"unknown process {name!r} in main", 1, 1, name, "", 0)
        for resource, p_pos, v_pos in by_name[name]:
            out.append(HoldInterval(axis, resource, p_pos, v_pos))
    return out


def ambient(prog: PvProgram) -> Cube:
    """The bounded state box: [0, L+1] per axis, L the instruction count."""
    if not prog.main:
        raise PvValidationError("program has no processes", 1, 1, "", "", 0)
    return Cube(tuple(interval(0, len(body) + 1) for body in prog.main_bodies))


def ambient_area(prog: PvProgram) -> CubicalArea:
    box = ambient(prog)
    return CubicalArea(box.dim, (box,))


def forbidden_region(prog: PvProgram) -> CubicalArea:
    """The inconsistent states: one open box per conflicting pair of holds."""
    holds = validate(prog)
    box = ambient(prog)
    dim = box.dim
    cubes = []
    for i, a in enumerate(holds):
        for b in holds[i + 1:]:
            if a.resource != b.resource or a.process == b.process:
                continue
            factors = list(box.factors)
            factors[a.process] = interval(a.p_pos, a.v_pos, False, False)
            factors[b.process] = interval(b.p_pos, b.v_pos, False, False)
            cubes.append(Cube(tuple(factors)))
    return normalize(CubeFamily(dim, tuple(cubes)))


def model(prog: PvProgram) -> CubicalArea:
    """The consistent states: ambient box minus the forbidden region."""
    return area_intersect(ambient_area(prog), area_complement(forbidden_region(prog)))


def resource_groups(prog: PvProgram) -> tuple[tuple[int, ...], ...]:
    """Partition of the main axes into connected groups sharing resources.

    Two axes land in the same group when a chain of processes with pairwise
    overlapping resource sets links them.
    """
    validate(prog)
    n = len(prog.main)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[str, int] = {}
    for axis, body in enumerate(prog.main_bodies):
        for action in body:
            if action.resource in owner:
                parent[find(axis)] = find(owner[action.resource])
            else:
                owner[action.resource] = axis
    groups: dict[int, list[int]] = {}
    for axis in range(n):
        groups.setdefault(find(axis), []).append(axis)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


def subprogram(prog: PvProgram, axes: tuple[int, ...]) -> PvProgram:
    """The restriction of a program to a subset of its main axes."""
    names = [prog.main[a] for a in axes]
    keep = set(names)
    return PvProgram(tuple(p for p in prog.processes if p.name in keep), tuple(names))
