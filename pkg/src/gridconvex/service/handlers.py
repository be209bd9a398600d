"""Request handlers shared by the HTTP routes and the CLI.

Each handler accepts a request model, runs the core pipeline, and returns a
response model; typed core exceptions propagate to the caller, which maps
them to HTTP status codes or process exit codes.
"""

from __future__ import annotations

from ..convexity import EXHAUSTIVE, FIRST_WITNESS, analyze
from ..datagen import ShapeSpec, generate
from ..density import select_eps
from ..errors import ParameterError
from ..formats import report_to_dict
from ..geometry import Cluster
from ..preprocess import random_project, subsample_cluster
from ..svg import render_analysis_svg
from .schemas import (AnalyzeRequest, AnalyzeResponse, GenerateRequest,
                      GenerateResponse, Report, SelectEpsRequest,
                      SelectEpsResponse)

__all__ = ["run_analysis", "run_generate", "run_select_eps", "resolve_mode"]

_MODES = {"first": FIRST_WITNESS, "exhaustive": EXHAUSTIVE}

SUBSAMPLE_WARNING = (
    "cluster subsampled at rate {rate:g}: a thinned sample can distort the "
    "cluster's structure and weaken the convexity verdict")


def resolve_mode(mode: str) -> str:
    try:
        return _MODES[mode]
    except KeyError:
        raise ParameterError(f"mode must be one of {sorted(_MODES)}, got {mode!r}") from None


def run_analysis(request: AnalyzeRequest) -> AnalyzeResponse:
    cluster = Cluster.from_rows(request.points)
    warnings: list[str] = []

    if request.project_dims is not None:
        cluster = random_project(cluster, request.project_dims, request.seed)
    if request.subsample_rate is not None and request.subsample_rate < 1:
        cluster = subsample_cluster(cluster, request.subsample_rate, request.seed)
        warnings.append(SUBSAMPLE_WARNING.format(rate=request.subsample_rate))

    if request.auto_eps:
        min_pts = request.min_pts if request.min_pts is not None else 2 * cluster.dims
        eps = select_eps(cluster, min_pts, request.resolution)
    elif request.eps is not None:
        eps = request.eps
    else:
        raise ParameterError("eps is required unless auto_eps is set")

    report = analyze(cluster, eps, eta=request.eta, seed=request.seed,
                     mode=resolve_mode(request.mode))

    svg = None
    if request.include_svg:
        if cluster.dims == 2:
            svg = render_analysis_svg(cluster, report)
        else:
            warnings.append(
                f"figure rendering skipped: needs 2-D data, got {cluster.dims} dims")
    return AnalyzeResponse(report=Report(**report_to_dict(report)), svg=svg,
                           warnings=warnings)


def run_generate(request: GenerateRequest) -> GenerateResponse:
    spec = ShapeSpec(kind=request.shape, n=request.n, seed=request.seed,
                     center=request.center, r_inner=request.r_inner,
                     r_outer=request.r_outer, radius=request.radius,
                     cutter_center=request.cutter_center,
                     cutter_radius=request.cutter_radius,
                     x_range=request.x_range, y_range=request.y_range)
    cluster = generate(spec)
    return GenerateResponse(points=cluster.coords.tolist(),
                            description=spec.describe())


def run_select_eps(request: SelectEpsRequest) -> SelectEpsResponse:
    cluster = Cluster.from_rows(request.points)
    min_pts = request.min_pts if request.min_pts is not None else 2 * cluster.dims
    eps = select_eps(cluster, min_pts, request.resolution)
    return SelectEpsResponse(eps=eps, min_pts=min_pts)
