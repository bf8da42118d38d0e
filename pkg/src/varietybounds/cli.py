"""Command line interface.

Exit codes: 0 success, 2 parse/usage error, 3 query point on the curve,
4 sandwich violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import OnVarietyError, axis_bounds, bound_report
from .oracle import EmptyVarietyError, SamplingPlan, sep_estimate
from .parser import PolySyntaxError, parse
from .polynomial import Point2
from .subdivision import BoxRegion, box_list, render, subdivide
from .verify import DEFAULT_DELTA, check_sandwich, random_batch

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ON_VARIETY = 3
EXIT_VIOLATION = 4


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits; infinities become the string "inf"."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return '"inf"' if obj > 0 else '"-inf"'
        if math.isnan(obj):
            return '"nan"'
        return format(obj, ".17g")
    if isinstance(obj, complex):
        return dumps({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{dumps(str(k))}: {dumps(v, indent, _level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _floats(text: str, n: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated reals")
    try:
        vals = [float(s) for s in parts]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"{what} must be finite")
    return vals


def point_arg(text: str) -> Point2:
    rx, ix, ry, iy = _floats(text, 4, "point")
    return Point2(complex(rx, ix), complex(ry, iy))


def box_arg(text: str) -> BoxRegion:
    cx, cy, h = _floats(text, 3, "box")
    if h <= 0:
        raise argparse.ArgumentTypeError("box half-width must be positive")
    return BoxRegion((cx, cy), h, 0)


def plan_arg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("plan is n_alpha,n_phi,rounds")
    try:
        return tuple(int(s) for s in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_poly(sp, required=True):
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("-f", "--poly", help="polynomial in x, y, e.g. 'x^2 + y^2 - 1'")
    g.add_argument("--file", type=Path, help="read the polynomial from a file")


def _add_plan(sp):
    sp.add_argument("--plan", type=plan_arg, default=(64, 64, 3), metavar="NA,NPHI,ROUNDS",
                    help="oracle direction grid and refinement rounds (default 64,64,3)")
    sp.add_argument("--shrink", type=float, default=0.2, help="refinement shrink factor")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="varietybounds",
        description="Certified bounds on the distance from a point to a plane curve in C^2.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bounds", help="gamma and the lower/upper distance bounds")
    _add_poly(sp)
    sp.add_argument("-p", "--point", type=point_arg, required=True, metavar="RE,IM,RE,IM")

    sp = sub.add_parser("oracle", help="brute-force distance estimate")
    _add_poly(sp)
    sp.add_argument("-p", "--point", type=point_arg, required=True, metavar="RE,IM,RE,IM")
    _add_plan(sp)

    sp = sub.add_parser("check", help="verify lower <= estimate <= upper*(1+delta)")
    _add_poly(sp, required=False)
    sp.add_argument("-p", "--point", type=point_arg, metavar="RE,IM,RE,IM")
    sp.add_argument("--random", action="store_true", help="run a batch of random instances")
    sp.add_argument("-n", type=int, default=100, help="batch size")
    sp.add_argument("--degree", type=int, default=6, help="maximum total degree")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--delta", type=positive, default=DEFAULT_DELTA)
    _add_plan(sp)

    sp = sub.add_parser("subdivide", help="quadtree exclusion of a real box")
    _add_poly(sp)
    sp.add_argument("--box", type=box_arg, default=BoxRegion((0.0, 0.0), 2.0),
                    metavar="CX,CY,H", help="root box center and half-width")
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("-o", "--output", type=Path, help="SVG output path")
    sp.add_argument("--boxes", type=Path, help="plain-text box list output path")
    return ap


def _poly(args):
    text = args.file.read_text().strip() if args.file else args.poly
    return parse(text)


def _plan(args) -> SamplingPlan:
    na, nphi, rounds = args.plan
    return SamplingPlan(n_alpha=na, n_phi=nphi, rounds=rounds, shrink=args.shrink)


def _emit(args, payload: dict, out) -> None:
    if args.format == "json":
        out.write(dumps(payload) + "\n")
        return
    for k, v in payload.items():
        if isinstance(v, (dict, list, complex)):
            v = dumps(v, indent=0).replace("\n", " ")
        elif isinstance(v, float):
            v = format(v, ".17g")
        out.write(f"{k}: {v}\n")


def run(args, out=None) -> int:
    out = out or sys.stdout
    if args.command == "check" and args.random:
        summary = random_batch(args.n, args.degree, args.seed, _plan(args), args.delta)
        payload = {"n": args.n, "degree": args.degree, "seed": args.seed, **summary.to_dict()}
        _emit(args, payload, out)
        return EXIT_OK if summary.passed else EXIT_VIOLATION

    f = _poly(args)
    if args.command == "bounds":
        rep = bound_report(f, args.point)
        ax, ay = axis_bounds(f, args.point)
        _emit(args, {**rep.to_dict(), "axis_bounds": {"along_x": ax, "along_y": ay}}, out)
    elif args.command == "oracle":
        _emit(args, sep_estimate(f, args.point, _plan(args)).to_dict(), out)
    elif args.command == "check":
        v = check_sandwich(f, args.point, _plan(args), args.delta)
        _emit(args, v.to_dict(), out)
        return EXIT_OK if v.passed else EXIT_VIOLATION
    elif args.command == "subdivide":
        outcome = subdivide(f, args.box, args.depth)
        if args.output:
            args.output.write_text(render(outcome, args.box))
        if args.boxes:
            args.boxes.write_text(box_list(outcome))
        _emit(args, outcome.to_dict(), out)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "check" and not args.random:
        if (args.poly is None and args.file is None) or args.point is None:
            ap.error("check needs -f/--file and -p, or --random")
    try:
        return run(args)
    except PolySyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OnVarietyError, EmptyVarietyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ON_VARIETY
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
