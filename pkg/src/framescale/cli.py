"""framescale command-line interface.

Usage:
    framescale analyze FRAME.json [--text] [--skip-spark] [--skip-complement]
    framescale vertices FRAME.json
    framescale verify FRAME.json --weights 1,1,1,0,0 [--decompose]
    framescale gen --d 3 --n 9 --field complex --seed 7 [--unit-norm] [--out F.json]

Exit codes: 0 success, 2 input error, 3 exhaustive-search guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DimensionError, ExponentialGuardError, ValidationError
from .frames import DEFAULT_MAX_N, random_frame
from .hermitian import Tolerances
from .io import FrameFileError, dump_frame, dumps_report, format_text, load_frame
from .report import analyze, verify_report, vertices_report
from .scaling import enumerate_minimal_scalings

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GUARD = 3


class InputError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    defaults = Tolerances()
    p.add_argument("input", help="frame file (JSON)")
    p.add_argument("--tol-rank", type=float, default=defaults.rank_rel,
                   help="relative singular-value threshold for rank")
    p.add_argument("--tol-residual", type=float, default=defaults.residual_abs,
                   help="absolute residual bound for feasibility")
    p.add_argument("--tol-nonneg", type=float, default=defaults.nonneg_abs,
                   help="negativity slack treated as zero")
    p.add_argument("--tol-dedup", type=float, default=defaults.dedup_abs,
                   help="max-norm distance identifying two vertices")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help="refuse exhaustive searches above this many vectors")
    p.add_argument("--force", action="store_true", help="ignore --max-n")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    mode.add_argument("--text", dest="text", action="store_true", help="plain text output")
    p.set_defaults(text=False)


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(args.tol_rank, args.tol_residual, args.tol_nonneg, args.tol_dedup)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(report: dict, text: bool) -> None:
    sys.stdout.write(format_text(report) if text else dumps_report(report))


def cmd_analyze(args) -> int:
    f = load_frame(args.input)
    report = analyze(
        f,
        _tolerances(args),
        max_n=args.max_n,
        force=args.force,
        skip_spark=args.skip_spark,
        skip_complement=args.skip_complement,
    )
    _emit(report, args.text)
    return EXIT_OK


def cmd_vertices(args) -> int:
    f = load_frame(args.input)
    tol = _tolerances(args)
    P = enumerate_minimal_scalings(f, tol, args.max_n, args.force)
    _emit(vertices_report(P, tol), args.text)
    return EXIT_OK


def _parse_weights(spec: str) -> list[float]:
    path = Path(spec)
    try:
        if path.is_file():
            data = json.loads(path.read_text())
            if isinstance(data, dict):
                data = data.get("weights")
            if not isinstance(data, list):
                raise InputError(f"{spec}: expected a JSON list of weights")
            return [float(x) for x in data]
        return [float(x) for x in spec.replace(" ", "").strip("[]").split(",") if x]
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse weights {spec!r}: {exc}") from None


def cmd_verify(args) -> int:
    f = load_frame(args.input)
    tol = _tolerances(args)
    weights = _parse_weights(args.weights)
    if len(weights) != f.n:
        raise InputError(f"got {len(weights)} weights for a frame of {f.n} vectors")
    report = verify_report(f, weights, tol, args.decompose, args.max_n, args.force)
    _emit(report, args.text)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.d < 1 or args.n < 1:
        raise InputError("--d and --n must be positive")
    f = random_frame(args.d, args.n, args.field, args.seed, args.unit_norm)
    text = dump_frame(f)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framescale",
        description="Scalability, minimal scalings and spark diagnostics for finite frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full diagnostic report for one frame")
    _add_common(p)
    p.add_argument("--skip-spark", action="store_true", help="skip spark, full spark, outer spark")
    p.add_argument("--skip-complement", action="store_true", help="skip the complement property")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("vertices", help="list the minimal scalings (vertices of the scaling polytope)")
    _add_common(p)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("verify", help="check a weight vector is a scaling")
    _add_common(p)
    p.add_argument("--weights", required=True,
                   help="comma-separated weights, or a JSON file holding a list")
    p.add_argument("--decompose", action="store_true",
                   help="also write the scaling as a convex combination of minimal scalings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a seeded random Gaussian frame")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=["real", "complex"], default="complex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unit-norm", action="store_true")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExponentialGuardError as exc:
        print(f"framescale: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FrameFileError, InputError, DimensionError, ValidationError) as exc:
        print(f"framescale: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
