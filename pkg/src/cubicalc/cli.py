"""Command-line driver.

Subcommands::

    cubicalc model FILE.pv [--json | --svg OUT.svg]
    cubicalc forbidden FILE.pv [--json | --svg OUT.svg]
    cubicalc deadlocks FILE.pv [--json | --svg OUT.svg] [--step Q]
    cubicalc attractor FILE.pv [--json | --svg OUT.svg] [--step Q]
    cubicalc factor (FILE.pv | --area JSON) [--json]
    cubicalc laws [--seed N] [--iters K] [--dim D] [--json]

Outputs are canonical (cubes in a fixed sorted order), so identical inputs
produce byte-identical output.  Exit codes: 0 success, 1 input error, 2 I/O
error, 3 internal invariant violation (a falsified law or a failed oracle
cross-check).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._rat import rat, rat_str
from .analysis import (
    doomed_region,
    find_deadlocks,
    factorize,
    grid_oracle,
)
from .areas import CubicalArea, area_equal, area_from_json, area_to_json
from .laws import run_law_suite
from .pv import PvError, ambient, forbidden_region, model, parse, resource_groups
from .render import render_svg

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1); argparse defaults to 2,
    # which this tool reserves for I/O errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="cubicalc",
                     description="Exact box-union semantics and analyses for lock programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, svg=True):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--json", action="store_true", help="emit JSON")
        group.add_argument("--text", action="store_true", help="emit text (default)")
        if svg:
            group.add_argument("--svg", metavar="FILE",
                               help="write an SVG rendering (2-process programs only)")

    for name, help_text in (("model", "the consistent-state region of a program"),
                            ("forbidden", "the inconsistent-state region of a program")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="PV source file")
        add_output(p)
        p.set_defaults(func=_cmd_region, which=name)

    for name, help_text in (("deadlocks", "stuck states of a program"),
                            ("attractor", "states doomed to deadlock")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="PV source file")
        p.add_argument("--step", metavar="Q", default=None,
                       help="cross-check against the brute-force grid oracle at this step")
        add_output(p)
        p.set_defaults(func=_cmd_analysis, which=name)

    p = sub.add_parser("factor", help="finest product factorization")
    p.add_argument("path", nargs="?", help="PV source file")
    p.add_argument("--area", metavar="JSON",
                   help="factor a raw area instead (inline JSON or a file path)")
    add_output(p, svg=False)
    p.set_defaults(func=_cmd_factor, which="factor")

    p = sub.add_parser("laws", help="run the algebraic law suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--dim", type=int, default=2)
    add_output(p, svg=False)
    p.set_defaults(func=_cmd_laws, which="laws")
    return parser


def _read_program(path: str):
    source = Path(path).read_text(encoding="utf-8")
    try:
        return parse(source)
    except PvError as err:
        raise _Located(err.locate(path)) from err


class _Located(Exception):
    pass


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _point_str(p) -> str:
    return "(" + ", ".join(rat_str(x) for x in p) + ")"


def _write_svg(args, path: str, **scene) -> int:
    box = scene.pop("ambient_box")
    if box.dim != 2:
        raise _Located(f"{path}: --svg needs a 2-process program, this one has {box.dim}")
    Path(args.svg).write_text(render_svg(box, **scene), encoding="utf-8")
    return EXIT_OK


def _cmd_region(args) -> int:
    prog = _read_program(args.path)
    try:
        forbidden = forbidden_region(prog)
        region = forbidden if args.which == "forbidden" else model(prog)
    except PvError as err:
        raise _Located(err.locate(args.path)) from err
    if args.svg:
        scene = {"forbidden": forbidden}
        if args.which == "model":
            scene["model"] = region
        return _write_svg(args, args.path, ambient_box=ambient(prog), **scene)
    if args.json:
        _emit_json(area_to_json(region))
    else:
        print(region)
    return EXIT_OK


def _cmd_analysis(args) -> int:
    prog = _read_program(args.path)
    try:
        m = model(prog)
        box = ambient(prog)
        deadlocks = find_deadlocks(m, box)
        doomed = doomed_region(m, box) if args.which == "attractor" or args.step else None
    except PvError as err:
        raise _Located(err.locate(args.path)) from err

    if args.step is not None:
        oracle = grid_oracle(prog, rat(args.step))
        if [tuple(p) for p in deadlocks] != [tuple(p) for p in oracle.deadlocks()]:
            print("oracle cross-check failed: deadlock sets differ", file=sys.stderr)
            return EXIT_INVARIANT
        for p in oracle.grid_points():
            if doomed.contains_point(p) != oracle.doomed(p):
                print(f"oracle cross-check failed: doomed disagrees at {_point_str(p)}",
                      file=sys.stderr)
                return EXIT_INVARIANT

    if args.which == "deadlocks":
        if args.svg:
            return _write_svg(args, args.path, ambient_box=box,
                              forbidden=forbidden_region(prog), model=m,
                              deadlocks=deadlocks)
        if args.json:
            _emit_json({"deadlocks": [[rat_str(x) for x in p] for p in deadlocks]})
        else:
            for p in deadlocks:
                print(_point_str(p))
        return EXIT_OK

    if args.svg:
        return _write_svg(args, args.path, ambient_box=box,
                          forbidden=forbidden_region(prog), model=m,
                          doomed=doomed, deadlocks=deadlocks)
    if args.json:
        _emit_json(area_to_json(doomed))
    else:
        print(doomed)
    return EXIT_OK


def _load_area(spec: str) -> CubicalArea:
    text = spec if spec.lstrip().startswith("{") else Path(spec).read_text(encoding="utf-8")
    try:
        return area_from_json(json.loads(text))
    except (KeyError, TypeError, ValueError) as err:
        raise _Located(f"bad area JSON: {err}") from err


def _cmd_factor(args) -> int:
    if (args.path is None) == (args.area is None):
        raise _Located("factor needs exactly one of FILE.pv or --area")
    groups = None
    if args.area is not None:
        area = _load_area(args.area)
    else:
        prog = _read_program(args.path)
        try:
            area = model(prog)
            groups = resource_groups(prog)
        except PvError as err:
            raise _Located(err.locate(args.path)) from err
    blocks = factorize(area)
    if args.json:
        payload = {
            "factorization": [
                {"axes": list(axes), "factor": area_to_json(f)} for axes, f in blocks
            ],
        }
        if groups is not None:
            payload["resource_groups"] = [list(g) for g in groups]
        _emit_json(payload)
    else:
        for axes, f in blocks:
            print(f"axes {tuple(axes)}:")
            for line in str(f).splitlines():
                print(f"  {line}")
        if groups is not None:
            print("resource groups: " + " | ".join(str(tuple(g)) for g in groups))
    return EXIT_OK


def _cmd_laws(args) -> int:
    if args.iters < 1:
        raise _Located("--iters must be at least 1")
    if not 1 <= args.dim <= 3:
        raise _Located("--dim must be between 1 and 3")
    report = run_law_suite(args.seed, args.iters, args.dim)
    if args.json:
        _emit_json(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_INVARIANT


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        return args.func(args)
    except _Located as err:
        print(err, file=sys.stderr)
        return EXIT_INPUT
    except PvError as err:
        print(f"{err.line}:{err.col}: {err.message}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(err, file=sys.stderr)
        return EXIT_IO
    except ValueError as err:
        print(err, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
