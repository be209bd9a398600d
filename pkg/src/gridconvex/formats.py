"""File formats: the point CSV and the canonical JSON analysis report.

Point files carry one point per row with plain numeric columns; ``#`` lines
and a single non-numeric header row are skipped on read.  Coordinates are
written with 17 significant digits, so write/read round-trips are exact.

Reports serialize with sorted keys and a trailing newline, making the bytes a
pure function of the report contents.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .convexity import AnalysisReport
from .errors import ParameterError
from .geometry import Cluster
from .version import __version__

__all__ = ["read_points_csv", "write_points_csv", "report_to_dict", "report_json"]


def _split_row(line: str) -> list[str]:
    for delim in (",", ";", "\t"):
        if delim in line:
            return [cell.strip() for cell in line.split(delim)]
    return line.split()


def read_points_csv(path) -> Cluster:
    """Parse a delimiter-separated point file into a cluster."""
    rows: list[list[float]] = []
    arity: int | None = None
    header_seen = False
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        cells = _split_row(text)
        try:
            values = [float(c) for c in cells]
        except ValueError:
            if rows or header_seen:
                raise ParameterError(f"{path}: row {lineno} is not numeric")
            header_seen = True
            continue
        if arity is None:
            arity = len(values)
        elif len(values) != arity:
            raise ParameterError(
                f"{path}: row {lineno} has {len(values)} columns, expected {arity}")
        if not all(np.isfinite(v) for v in values):
            raise ParameterError(f"{path}: row {lineno} has a non-finite value")
        rows.append(values)
    if not rows:
        raise ParameterError(f"{path}: no data rows found")
    return Cluster.from_rows(rows)


def write_points_csv(path, cluster: Cluster, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    for row in cluster.coords:
        lines.append(",".join(format(v, ".17g") for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def report_to_dict(report: AnalysisReport) -> dict:
    """Flatten a report into the wire schema."""
    witness = None if report.witness is None else [float(v) for v in report.witness]
    pair = None if report.witness_pair is None else [int(v) for v in report.witness_pair]
    return {
        "omega": bool(report.omega),
        "witness": witness,
        "witness_pair": pair,
        "eps": float(report.params.eps),
        "eta": float(report.params.eta),
        "seed": int(report.params.seed),
        "mode": report.params.mode,
        "generator": report.params.generator,
        "evidence": report.evidence,
        "counts": {
            "t": int(report.counts.total_grid),
            "sampled": int(report.counts.sampled),
            "non_neighboring": int(report.counts.non_neighboring),
            "probe_points": int(report.counts.probe_points),
            "marginal": int(report.counts.marginal),
            "pairs_tested": int(report.counts.pairs_tested),
        },
        "marginal_ids": [int(v) for v in report.marginal.members],
        "version": __version__,
    }


def report_json(report_dict: dict) -> str:
    """Canonical serialization: key-sorted, newline-terminated."""
    return json.dumps(report_dict, sort_keys=True) + "\n"
