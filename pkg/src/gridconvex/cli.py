"""Command-line interface: a thin client over the service handlers.

Subcommands build the same request models the HTTP service consumes, invoke
the shared handlers in-process, and deal with the filesystem side (reading
point files, writing reports and figures).

Exit codes: 0 completed analysis (whatever the verdict), 2 parse/validation
problems, 3 grid too large, 4 no satisfying eps found.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EpsilonSearchError, GridTooLargeError, ParameterError
from .formats import read_points_csv, report_json, write_points_csv
from .geometry import Cluster
from .service.handlers import run_analysis, run_generate, run_select_eps
from .service.schemas import AnalyzeRequest, GenerateRequest, SelectEpsRequest
from .version import __version__

__all__ = ["build_parser", "main", "entrypoint"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GRID_TOO_LARGE = 3
EXIT_NO_EPS = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridconvex",
        description="Grid-calibrated convexity analysis of a density-based cluster.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a point file for convexity")
    pa.add_argument("--input", required=True, help="point CSV to analyze")
    eps_group = pa.add_mutually_exclusive_group(required=True)
    eps_group.add_argument("--eps", type=float, help="grid accuracy / neighborhood radius")
    eps_group.add_argument("--auto-eps", action="store_true",
                           help="derive eps from the density-based selection rule")
    pa.add_argument("--min-pts", type=int, default=None,
                    help="density threshold for --auto-eps (default 2 * dims)")
    pa.add_argument("--resolution", type=float, default=0.02,
                    help="relative ladder step for --auto-eps (default 0.02)")
    pa.add_argument("--eta", type=float, default=1.0,
                    help="grid sampling rate in (0, 1] (default 1)")
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--mode", choices=["first", "exhaustive"], default="first")
    pa.add_argument("--project-dims", type=int, default=None,
                    help="random-project the input down to this many dimensions")
    pa.add_argument("--subsample", type=float, default=None, metavar="RATE",
                    help="subsample the cluster at this rate before analysis")
    pa.add_argument("--out", required=True, help="path for the JSON report")
    pa.add_argument("--svg", default=None, help="optional figure path (2-D inputs only)")

    pg = sub.add_parser("generate", help="write a synthetic shape as a point CSV")
    pg.add_argument("--shape", required=True, choices=["ring", "crescent", "disk", "rectangle"])
    pg.add_argument("--n", required=True, type=int)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--center", type=float, nargs=2, default=(0.0, 0.0), metavar=("X", "Y"))
    pg.add_argument("--r-inner", type=float, default=None)
    pg.add_argument("--r-outer", type=float, default=None)
    pg.add_argument("--radius", type=float, default=None)
    pg.add_argument("--cutter-center", type=float, nargs=2, default=None, metavar=("X", "Y"))
    pg.add_argument("--cutter-radius", type=float, default=None)
    pg.add_argument("--x-range", type=float, nargs=2, default=None, metavar=("MIN", "MAX"))
    pg.add_argument("--y-range", type=float, nargs=2, default=None, metavar=("MIN", "MAX"))
    pg.add_argument("--out", required=True)

    ps = sub.add_parser("select-eps", help="print the selected grid accuracy")
    ps.add_argument("--input", required=True)
    ps.add_argument("--min-pts", type=int, default=None)
    ps.add_argument("--resolution", type=float, default=0.02)

    return parser


def _cmd_analyze(args) -> int:
    cluster = read_points_csv(args.input)
    request = AnalyzeRequest(
        points=cluster.coords.tolist(),
        eps=args.eps,
        auto_eps=args.auto_eps,
        min_pts=args.min_pts,
        resolution=args.resolution,
        eta=args.eta,
        seed=args.seed,
        mode=args.mode,
        project_dims=args.project_dims,
        subsample_rate=args.subsample,
        include_svg=args.svg is not None,
    )
    response = run_analysis(request)
    for note in response.warnings:
        print(f"warning: {note}", file=sys.stderr)
    Path(args.out).write_text(report_json(response.report.model_dump()), encoding="utf-8")
    if args.svg is not None and response.svg is not None:
        Path(args.svg).write_text(response.svg, encoding="utf-8")
    return EXIT_OK


def _cmd_generate(args) -> int:
    request = GenerateRequest(
        shape=args.shape, n=args.n, seed=args.seed, center=tuple(args.center),
        r_inner=args.r_inner, r_outer=args.r_outer, radius=args.radius,
        cutter_center=tuple(args.cutter_center) if args.cutter_center else None,
        cutter_radius=args.cutter_radius,
        x_range=tuple(args.x_range) if args.x_range else None,
        y_range=tuple(args.y_range) if args.y_range else None,
    )
    response = run_generate(request)
    write_points_csv(args.out, Cluster.from_rows(response.points),
                     comment=response.description)
    return EXIT_OK


def _cmd_select_eps(args) -> int:
    cluster = read_points_csv(args.input)
    request = SelectEpsRequest(points=cluster.coords.tolist(),
                               min_pts=args.min_pts, resolution=args.resolution)
    response = run_select_eps(request)
    print(repr(response.eps))
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "generate": _cmd_generate,
    "select-eps": _cmd_select_eps,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRID_TOO_LARGE
    except EpsilonSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_EPS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())
