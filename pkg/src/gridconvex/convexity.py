"""Midpoint-convexity testing over marginal pairs, plus the full pipeline.

A cluster is declared non-convex as soon as the midpoint of two of its
marginal points is not within eps of any cluster point; that midpoint is the
witness.  If every midpoint is covered, the cluster is convex at precision
eps, a certificate only as strong as the grid evidence behind it, which the
report states explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detection import (MarginalSet, NonNeighboringSet, detect_marginal,
                        detect_non_neighboring)
from .errors import ParameterError
from .geometry import Cluster
from .grid import GENERATOR_NAME, GridSpec, SampledGrid, build_spec, sample_grid
from .spatial import SpatialIndex, any_within, build_index, covered_mask

__all__ = [
    "FIRST_WITNESS",
    "EXHAUSTIVE",
    "EVIDENCE_OK",
    "EVIDENCE_INSUFFICIENT",
    "MidpointOutcome",
    "AnalysisParams",
    "AnalysisCounts",
    "AnalysisDiagnostics",
    "AnalysisReport",
    "midpoint_test",
    "analyze",
]

FIRST_WITNESS = "first_witness"
EXHAUSTIVE = "exhaustive"

EVIDENCE_OK = "ok"
EVIDENCE_INSUFFICIENT = "insufficient_grid_evidence"

_PAIR_CHUNK = 8192


@dataclass(frozen=True)
class MidpointOutcome:
    omega: bool
    witness: np.ndarray | None
    witness_pair: tuple[int, int] | None
    pairs_tested: int
    violations: int
    evidence: str


def _pair_stream(ids: tuple[int, ...]):
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            yield ids[a], ids[b]


def midpoint_test(cluster: Cluster, marginal: MarginalSet, index: SpatialIndex,
                  eps: float, mode: str = FIRST_WITNESS) -> MidpointOutcome:
    """Test coverage of every distinct marginal pair's midpoint.

    Pairs run in lexicographic id order.  ``first_witness`` stops at the first
    uncovered midpoint; ``exhaustive`` scans all pairs, reports the uncovered
    midpoint of the smallest pair key, and counts every violation.
    """
    if mode not in (FIRST_WITNESS, EXHAUSTIVE):
        raise ParameterError(f"mode must be {FIRST_WITNESS!r} or {EXHAUSTIVE!r}, got {mode!r}")
    if eps != index.cell_size:
        raise ParameterError(
            f"eps {eps} does not match index cell size {index.cell_size}")
    ids = marginal.members
    if len(ids) < 2:
        return MidpointOutcome(omega=True, witness=None, witness_pair=None,
                               pairs_tested=0, violations=0,
                               evidence=EVIDENCE_INSUFFICIENT)
    coords = cluster.coords

    if mode == FIRST_WITNESS:
        tested = 0
        for j, k in _pair_stream(ids):
            mid = (coords[j] + coords[k]) / 2.0
            tested += 1
            if not any_within(index, mid, eps):
                return MidpointOutcome(omega=False, witness=mid,
                                       witness_pair=(j, k), pairs_tested=tested,
                                       violations=1, evidence=EVIDENCE_OK)
        return MidpointOutcome(omega=True, witness=None, witness_pair=None,
                               pairs_tested=tested, violations=0,
                               evidence=EVIDENCE_OK)

    # Exhaustive: evaluate all pairs in order, chunked for vectorized coverage.
    idarr = np.asarray(ids, dtype=np.int64)
    ai, bi = np.triu_indices(len(idarr), k=1)  # row-major == lexicographic order
    ja, kb = idarr[ai], idarr[bi]
    violations = 0
    witness = None
    pair = None
    for start in range(0, len(ja), _PAIR_CHUNK):
        j = ja[start:start + _PAIR_CHUNK]
        k = kb[start:start + _PAIR_CHUNK]
        mids = (coords[j] + coords[k]) / 2.0
        covered = covered_mask(index, mids, eps)
        bad = np.nonzero(~covered)[0]
        if len(bad) and witness is None:
            first = int(bad[0])
            witness = mids[first]
            pair = (int(j[first]), int(k[first]))
        violations += int(len(bad))
    if witness is None:
        return MidpointOutcome(omega=True, witness=None, witness_pair=None,
                               pairs_tested=len(ja), violations=0,
                               evidence=EVIDENCE_OK)
    return MidpointOutcome(omega=False, witness=witness, witness_pair=pair,
                           pairs_tested=len(ja), violations=violations,
                           evidence=EVIDENCE_OK)


@dataclass(frozen=True)
class AnalysisParams:
    eps: float
    eta: float
    seed: int
    mode: str
    generator: str = GENERATOR_NAME


@dataclass(frozen=True)
class AnalysisCounts:
    total_grid: int
    sampled: int
    non_neighboring: int
    probe_points: int
    marginal: int
    pairs_tested: int


@dataclass(frozen=True)
class AnalysisDiagnostics:
    """Intermediate state kept for figure rendering and replay checks."""

    grid: GridSpec
    sampled: SampledGrid
    non_neighboring: NonNeighboringSet
    violations: int


@dataclass(frozen=True)
class AnalysisReport:
    omega: bool
    witness: np.ndarray | None
    witness_pair: tuple[int, int] | None
    marginal: MarginalSet
    params: AnalysisParams
    counts: AnalysisCounts
    evidence: str
    diagnostics: AnalysisDiagnostics


def analyze(cluster: Cluster, eps: float, eta: float = 1.0, seed: int = 0,
            mode: str = FIRST_WITNESS) -> AnalysisReport:
    """Run the full pipeline and assemble the report.

    Deterministic given (cluster, eps, eta, seed, mode); with eta = 1 the seed
    has no effect at all.
    """
    if mode not in (FIRST_WITNESS, EXHAUSTIVE):
        raise ParameterError(f"mode must be {FIRST_WITNESS!r} or {EXHAUSTIVE!r}, got {mode!r}")
    spec = build_spec(cluster, eps)
    sampled = sample_grid(spec, eta, seed)
    index = build_index(cluster, eps)
    nonneigh = detect_non_neighboring(cluster, sampled, index)
    marginal = detect_marginal(cluster, nonneigh, spec, index)
    outcome = midpoint_test(cluster, marginal, index, eps, mode)
    return AnalysisReport(
        omega=outcome.omega,
        witness=outcome.witness,
        witness_pair=outcome.witness_pair,
        marginal=marginal,
        params=AnalysisParams(eps=float(eps), eta=float(eta), seed=int(seed), mode=mode),
        counts=AnalysisCounts(
            total_grid=spec.total,
            sampled=sampled.size,
            non_neighboring=nonneigh.size,
            probe_points=marginal.probes_examined,
            marginal=marginal.size,
            pairs_tested=outcome.pairs_tested,
        ),
        evidence=outcome.evidence,
        diagnostics=AnalysisDiagnostics(grid=spec, sampled=sampled,
                                        non_neighboring=nonneigh,
                                        violations=outcome.violations),
    )
