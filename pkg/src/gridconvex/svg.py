"""Layered SVG rendering of a 2-D analysis.

One figure stacks the cluster, the sampled lattice, the uncovered lattice
points, the probe points, the marginal points, and, when the verdict is
non-convex, the witness pair with its midpoint and eps-disk, plus a legend.
"""

from __future__ import annotations

import numpy as np

from .convexity import AnalysisReport
from .detection import probe_indices
from .errors import ParameterError
from .geometry import Cluster
from .grid import lattice_points

__all__ = ["render_analysis_svg"]

_LEGEND = [
    ("cluster point", '<circle cx="8" cy="{y}" r="2.5" fill="#1f5fbf"/>'),
    ("sampled grid point", '<circle cx="8" cy="{y}" r="3" fill="none" stroke="#d62728"/>'),
    ("uncovered grid point", '<circle cx="8" cy="{y}" r="3" fill="none" stroke="#2ca02c"/>'),
    ("probe grid point", '<circle cx="8" cy="{y}" r="3" fill="none" stroke="#d63fd6"/>'),
    ("marginal cluster point", '<circle cx="8" cy="{y}" r="3.5" fill="none" stroke="#000"/>'),
    ("witness pair / midpoint", '<rect x="5" y="{ry}" width="6" height="6" fill="#d62728"/>'),
]


def _fmt(v: float) -> str:
    return format(v, ".2f")


def render_analysis_svg(cluster: Cluster, report: AnalysisReport,
                        size: int = 760, margin: int = 40) -> str:
    if cluster.dims != 2:
        raise ParameterError(f"figure rendering needs 2-D data, got {cluster.dims} dims")
    spec = report.diagnostics.grid
    eps = spec.eps
    lo = spec.origin
    hi = spec.origin + (np.asarray(spec.counts) - 1) * eps
    span = hi - lo
    scale = (size - 2 * margin) / span.max()
    width = int(2 * margin + span[0] * scale)
    height = int(2 * margin + span[1] * scale)

    def sx(x: float) -> float:
        return margin + (x - lo[0]) * scale

    def sy(y: float) -> float:
        return height - (margin + (y - lo[1]) * scale)

    def circles(points: np.ndarray, radius: float, style: str) -> str:
        return "".join(
            f'<circle cx="{_fmt(sx(px))}" cy="{_fmt(sy(py))}" r="{radius}" {style}/>'
            for px, py in points)

    sampled_pts = lattice_points(spec, report.diagnostics.sampled.index_array)
    nonneigh = report.diagnostics.non_neighboring
    uncovered_pts = (lattice_points(spec, np.array(sorted(nonneigh.members), dtype=np.int64))
                     if nonneigh.members else np.empty((0, 2)))
    probes = probe_indices(spec, nonneigh)
    probe_pts = lattice_points(spec, probes) if len(probes) else np.empty((0, 2))
    marginal_pts = cluster.coords[list(report.marginal.members)] \
        if report.marginal.members else np.empty((0, 2))

    sampled_style = 'fill="none" stroke="#d62728" stroke-width="0.6"'
    uncovered_style = 'fill="none" stroke="#2ca02c" stroke-width="0.9"'
    probe_style = 'fill="none" stroke="#d63fd6" stroke-width="0.9"'
    cluster_style = 'fill="#1f5fbf"'
    marginal_style = 'fill="none" stroke="#000" stroke-width="1.1"'
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<g id="grid-sampled">{circles(sampled_pts, 2.0, sampled_style)}</g>',
        f'<g id="grid-uncovered">{circles(uncovered_pts, 3.0, uncovered_style)}</g>',
        f'<g id="grid-probes">{circles(probe_pts, 2.4, probe_style)}</g>',
        f'<g id="cluster">{circles(cluster.coords, 1.6, cluster_style)}</g>',
        f'<g id="marginal">{circles(marginal_pts, 3.5, marginal_style)}</g>',
    ]

    if report.witness is not None:
        j, k = report.witness_pair
        tri = []
        for px, py in (cluster.coords[j], cluster.coords[k]):
            x, y = sx(px), sy(py)
            tri.append(f'<path d="M {_fmt(x)} {_fmt(y - 5)} L {_fmt(x - 4.5)} {_fmt(y + 4)} '
                       f'L {_fmt(x + 4.5)} {_fmt(y + 4)} Z" fill="#000"/>')
        wx, wy = sx(report.witness[0]), sy(report.witness[1])
        parts.append(
            '<g id="witness">'
            + "".join(tri)
            + f'<circle cx="{_fmt(wx)}" cy="{_fmt(wy)}" r="{_fmt(eps * scale)}" '
            f'fill="none" stroke="#2ca02c" stroke-width="1.4"/>'
            + f'<rect x="{_fmt(wx - 3)}" y="{_fmt(wy - 3)}" width="6" height="6" fill="#d62728"/>'
            + "</g>")

    verdict = "convex at precision eps" if report.omega else "non-convex"
    title = (f"{verdict} | eps={report.params.eps:g} eta={report.params.eta:g} "
             f"seed={report.params.seed} evidence={report.evidence}")
    parts.append(f'<text x="{margin}" y="20" font-size="13" font-family="sans-serif">{title}</text>')

    legend_rows = []
    for row, (label, marker) in enumerate(_LEGEND):
        y = 14 + 16 * row
        legend_rows.append('<g transform="translate(0,%d)">%s'
                           '<text x="16" y="4" font-size="11" font-family="sans-serif">%s</text></g>'
                           % (y, marker.format(y=0, ry=-3), label))
    parts.append(
        f'<g id="legend" transform="translate({width - 190},{margin})">'
        f'<rect x="-8" y="-4" width="186" height="{16 * len(_LEGEND) + 12}" '
        f'fill="white" stroke="#999"/>' + "".join(legend_rows) + "</g>")
    parts.append("</svg>")
    return "".join(parts)
