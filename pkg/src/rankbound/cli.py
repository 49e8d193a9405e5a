"""
rankbound CLI Module

Command-line driver for secant dimensions, monodromy degree runs,
interpolation certificates and asymptotic rank bounds. Machine output is JSON
on stdout; logs go to stderr.
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from math import comb
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .certify.bounds import asymptotic_bound, minimal_q
from .certify.interpolation import monomial_count, nonvanishing
from .certify.kronecker_lab import SPAN_SAMPLE_MARGIN, span_dimension, verify_decomposition
from .certify.tables import check_codim_one, check_higher_codim, scan_formats
from .config import Tolerances, setup_logging, worker_count
from .core.coordinator import DegreeRunCoordinator
from .core.formats import Format
from .core.segre_system import complex_gaussian, generic_border_rank, secant_dimension
from .errors import InvalidFormat, RankBoundError
from .homotopy.monodromy import StopRule, trace_test
from .homotopy.tracker import TrackerConfig
from .utils.metrics import run_metrics
from .utils.persistence import load_witness
from .utils.reports import ReportGenerator

logger = logging.getLogger(__name__)

DESK_SCALE_FORMAT = Format(3, 3, 3, 4)


def _sides(text: str) -> Format:
    try:
        return Format.parse(text)
    except InvalidFormat as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return value


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from e
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must lie strictly between 0 and 1")
    return value


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    parser = argparse.ArgumentParser(
        prog="rankbound",
        description=f"rankbound v{__version__} - asymptotic rank bounds from secant varieties",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  rankbound dim --format 3,3,3 --r 4
  rankbound gbr --format 3,5,7
  rankbound degree --format 3,3,3 --r 4 --seed 1 --checkpoint s4_333.json
  rankbound bound --r 8 --dimL 2 --q 104
  rankbound minq --r 9 --dimL 3 --target 10
  rankbound interp --witness s4_333.json --q 8
  rankbound table --which 2

Set RANKBOUND_THREADS to control the number of path-tracking workers.
        """
    )

    parser.add_argument(
        "--version", "-V",
        action="version",
        version=f"rankbound {__version__}",
        help="Show version and exit"
    )

    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose logging and print run metrics to stderr"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    dim = commands.add_parser("dim", help="Dimension, codimension and fiber dimension of σ_r")
    dim.add_argument("--format", type=_sides, required=True, help="Sides A,B,C")
    dim.add_argument("--r", type=_positive_int, required=True, help="Secant index")
    dim.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")

    gbr = commands.add_parser("gbr", help="Generic border rank of a format")
    gbr.add_argument("--format", type=_sides, required=True, help="Sides A,B,C")
    gbr.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")

    degree = commands.add_parser("degree", help="Monodromy lower bound for deg σ_r ∩ L")
    degree.add_argument("--format", type=_sides, required=True, help="Sides A,B,C")
    degree.add_argument("--r", type=_positive_int, required=True, help="Secant index")
    degree.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    degree.add_argument("--max-loops", type=_positive_int, default=200,
                        help="Loops in this run (default: 200)")
    degree.add_argument("--stall", type=_positive_int, default=10,
                        help="Stop after this many loops without new points (default: 10)")
    degree.add_argument("--target", type=_positive_int, default=None,
                        help="Stop once this many points are known")
    degree.add_argument("--checkpoint", type=Path, default=None,
                        help="Witness file written after every loop "
                             "(default: sigma<r>_<a>x<b>x<c>.json)")
    degree.add_argument("--resume", action="store_true", help="Continue from --checkpoint")
    degree.add_argument("--threads", type=_positive_int, default=None,
                        help="Path-tracking workers (default: RANKBOUND_THREADS or all cores)")
    degree.add_argument("--trace", action="store_true",
                        help="Run the trace test afterwards (codimension 1)")
    degree.add_argument("--report", type=Path, default=None, help="Write an HTML report to DIR")

    bound = commands.add_parser("bound", help="Asymptotic bound r·C(dimL+q−1, q)^(1/q)")
    bound.add_argument("--r", type=_positive_int, required=True)
    bound.add_argument("--dimL", type=_positive_int, required=True)
    bound.add_argument("--q", type=_positive_int, required=True)

    minq = commands.add_parser("minq", help="Smallest q whose bound beats a target")
    minq.add_argument("--r", type=_positive_int, required=True)
    minq.add_argument("--dimL", type=_positive_int, required=True)
    minq.add_argument("--target", type=float, required=True)

    interp = commands.add_parser("interp", help="Interpolation verdict on a witness file")
    interp.add_argument("--witness", type=Path, required=True)
    interp.add_argument("--q", type=_positive_int, required=True)
    interp.add_argument("--rank-tol", type=_unit_interval, default=None,
                        help="Relative singular value cutoff (default: RANKBOUND_RANK_TOL or 1e-8)")

    trace = commands.add_parser("trace", help="Trace test on a codimension-1 witness file")
    trace.add_argument("--witness", type=Path, required=True)

    kron = commands.add_parser("verify-kronecker", help="Check the composition basis expansion")
    kron.add_argument("--format", type=_sides, required=True, help="Sides A,B,C")
    kron.add_argument("--q", type=_positive_int, required=True)
    kron.add_argument("--samples", type=_positive_int, default=None,
                      help="Random tensors for the span dimension (default: basis size + 5)")
    kron.add_argument("--seed", type=int, default=0)

    table = commands.add_parser("table", help="Recompute the published results")
    table.add_argument("--which", type=int, choices=(1, 2), required=True,
                       help="1: codimension 1, 2: codimensions 2 and 3")
    table.add_argument("--desk-scale", action="store_true",
                       help="Also measure the degree of σ4(3,3,3) by monodromy")
    table.add_argument("--seed", type=int, default=0)
    table.add_argument("--report", type=Path, default=None, help="Write an HTML report to DIR")

    scan = commands.add_parser("scan", help="Secant codimensions of small concise formats")
    scan.add_argument("--max-r", type=_positive_int, required=True)
    scan.add_argument("--seed", type=int, default=0)

    size = commands.add_parser("interp-size", help="Columns of a degree-q interpolation matrix")
    size.add_argument("--codim", type=_positive_int, required=True)
    size.add_argument("--q", type=_positive_int, required=True)

    return parser


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, default=str))


def _cmd_dim(args, tolerances: Tolerances) -> int:
    profile = secant_dimension(args.format.with_rank(args.r), args.seed, tolerances.rank_tol)
    _emit(profile.to_dict())
    return 0


def _cmd_gbr(args, tolerances: Tolerances) -> int:
    a, b, c = args.format.sides
    print(generic_border_rank(a, b, c, args.seed, tolerances.rank_tol))
    return 0


def _cmd_degree(args, tolerances: Tolerances) -> int:
    fmt = args.format.with_rank(args.r)
    checkpoint = args.checkpoint or Path(f"sigma{fmt.r}_{fmt.a}x{fmt.b}x{fmt.c}.json")
    coordinator = DegreeRunCoordinator(
        fmt,
        rng_seed=args.seed,
        tracker=TrackerConfig(corrector_tol=tolerances.newton_tol),
        checkpoint=checkpoint,
        workers=worker_count(args.threads),
        tolerances=tolerances,
    )
    stop = StopRule(stall_limit=args.stall, max_loops=args.max_loops, target_count=args.target)
    results = coordinator.run_degree_workflow(stop, resume=args.resume, run_trace=args.trace)
    results.pop("witness")

    if args.report:
        report = ReportGenerator(f"degree of {fmt.label()}", str(args.report))
        report.set_result(results)
        logger.info(f"📊 Report: {report.generate_report()}")
    _emit(results)
    return 0


def _cmd_bound(args, tolerances: Tolerances) -> int:
    print(f"{asymptotic_bound(args.r, args.dimL, args.q):.15g}")
    return 0


def _cmd_minq(args, tolerances: Tolerances) -> int:
    print(minimal_q(args.r, args.dimL, args.target))
    return 0


def _cmd_interp(args, tolerances: Tolerances) -> int:
    ws = load_witness(args.witness, tolerances.validation_tol)
    rank_tol = args.rank_tol if args.rank_tol is not None else tolerances.rank_tol
    _emit(nonvanishing(ws, args.q, rank_tol).to_dict())
    return 0


def _cmd_trace(args, tolerances: Tolerances) -> int:
    ws = load_witness(args.witness, tolerances.validation_tol)
    report = trace_test(ws, TrackerConfig(corrector_tol=tolerances.newton_tol))
    _emit(asdict(report))
    return 0 if report.passed else 1


def _cmd_verify_kronecker(args, tolerances: Tolerances) -> int:
    fmt = args.format
    rng = np.random.default_rng(args.seed)
    T = complex_gaussian(rng, fmt.ambient_dim)
    residual = verify_decomposition(T, args.q)
    expected = comb(fmt.ambient_dim + args.q - 1, args.q)
    samples = args.samples or expected + SPAN_SAMPLE_MARGIN
    span = span_dimension(fmt.a, fmt.b, fmt.c, args.q, samples, rng, tolerances.rank_tol)
    _emit({
        "format": list(fmt.sides),
        "q": args.q,
        "residual": residual,
        "relative_residual": residual / float(np.linalg.norm(T)) ** args.q,
        "span_dimension": span,
        "compositions": expected,
    })
    return 0


def _cmd_table(args, tolerances: Tolerances) -> int:
    if args.which == 1:
        degrees = None
        if args.desk_scale:
            coordinator = DegreeRunCoordinator(
                DESK_SCALE_FORMAT, rng_seed=args.seed,
                tracker=TrackerConfig(corrector_tol=tolerances.newton_tol),
                tolerances=tolerances)
            measured = coordinator.run_degree_workflow(StopRule())
            degrees = {DESK_SCALE_FORMAT: measured["degree_lower_bound"]}
        rows = check_codim_one(args.seed, degrees, tolerances.rank_tol)
    else:
        rows = check_higher_codim(args.seed, tolerances.rank_tol)

    if args.report:
        report = ReportGenerator(f"published table {args.which}", str(args.report))
        report.add_rows(rows)
        report.set_result(rows)
        logger.info(f"📊 Report: {report.generate_report()}")
    _emit(rows)
    unknown = [m for row in rows for m in row["mismatches"] if not m["known"]]
    return 1 if unknown else 0


def _cmd_scan(args, tolerances: Tolerances) -> int:
    _emit(scan_formats(args.max_r, args.seed, tolerances.rank_tol))
    return 0


def _cmd_interp_size(args, tolerances: Tolerances) -> int:
    _emit({"codim": args.codim, "dim_L": args.codim + 1, "q": args.q,
           "columns": monomial_count(args.codim + 1, args.q)})
    return 0


COMMANDS = {
    "dim": _cmd_dim,
    "gbr": _cmd_gbr,
    "degree": _cmd_degree,
    "bound": _cmd_bound,
    "minq": _cmd_minq,
    "interp": _cmd_interp,
    "trace": _cmd_trace,
    "verify-kronecker": _cmd_verify_kronecker,
    "table": _cmd_table,
    "scan": _cmd_scan,
    "interp-size": _cmd_interp_size,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the rankbound CLI."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    logger.info(f"🧮 rankbound v{__version__} running {args.command}")

    try:
        code = COMMANDS[args.command](args, Tolerances.from_env())

    except InvalidFormat as e:
        print(f"✗ Invalid format: {e}", file=sys.stderr)
        return 2

    except RankBoundError as e:
        print(f"✗ {args.command} failed: {e}", file=sys.stderr)
        return 1

    except Exception as e:
        print(f"✗ Unexpected error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1

    if args.verbose:
        print("\n📊 Run Metrics:", file=sys.stderr)
        print("=" * 50, file=sys.stderr)
        print(run_metrics.get_display_summary(), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
