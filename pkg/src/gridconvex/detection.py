"""Boundary detection: uncovered lattice points, then marginal cluster points.

Phase one keeps the sampled lattice points that no cluster point covers within
eps.  Phase two walks their lattice neighbors (the probe points) and records,
for every probe that does have cluster points within eps, the nearest one;
those nearest points trace the cluster's inner and outer frontiers.

Both phases are evaluated in vectorized passes that iterate over cluster
points rather than queries.  Each cluster point can only cover lattice points
inside a small index box around it, so enumerating those boxes and filtering
with the exact squared-distance test reproduces, bit for bit, what per-query
bucket lookups (or a full linear scan) would decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

import numpy as np

from .errors import ParameterError
from .geometry import Cluster
from .grid import GridSpec, LatticeIndex, SampledGrid, lattice_points
from .spatial import SpatialIndex

__all__ = [
    "NonNeighboringSet",
    "MarginalSet",
    "detect_non_neighboring",
    "detect_marginal",
    "probe_indices",
]


@dataclass(frozen=True)
class NonNeighboringSet:
    """Sampled lattice points with no cluster point within eps."""

    members: frozenset[LatticeIndex]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MarginalSet:
    """Cluster points forming the approximate frontier.

    ``members`` holds sorted cluster-point ids; ``provenance`` maps each id to
    the probe lattice points that selected it; ``probes_examined`` counts all
    probes, including those with no cluster point in range.
    """

    members: tuple[int, ...]
    provenance: Mapping[int, tuple[LatticeIndex, ...]]
    probes_examined: int

    @property
    def size(self) -> int:
        return len(self.members)


def _check_consistent(index: SpatialIndex, spec: GridSpec, cluster: Cluster) -> None:
    if index.cell_size != spec.eps:
        raise ParameterError(
            f"index cell size {index.cell_size} does not match grid eps {spec.eps}")
    if index.coords.shape != cluster.coords.shape:
        raise ParameterError("index was not built from this cluster")


def _flat(idx: np.ndarray, counts: tuple[int, ...]) -> np.ndarray:
    return np.ravel_multi_index(idx.T, counts)


def _candidate_pairs(cluster: Cluster, spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """(lattice index, cluster id) pairs covering every point/lattice hit.

    The per-point index box is widened by one cell on each side so float slop
    in the division can never exclude a lattice point at distance exactly eps.
    """
    coords = cluster.coords
    origin = spec.origin
    eps = spec.eps
    counts = np.asarray(spec.counts, dtype=np.int64)
    lo = np.floor((coords - eps - origin) / eps).astype(np.int64) - 1
    hi = np.ceil((coords + eps - origin) / eps).astype(np.int64) + 1
    np.clip(lo, 0, counts - 1, out=lo)
    np.clip(hi, 0, counts - 1, out=hi)
    widths = (hi - lo).max(axis=0)
    boxes: list[np.ndarray] = []
    owners: list[np.ndarray] = []
    for off in product(*(range(int(w) + 1) for w in widths)):
        g = lo + np.asarray(off, dtype=np.int64)
        ok = (g <= hi).all(axis=1)
        boxes.append(g[ok])
        owners.append(np.nonzero(ok)[0])
    return np.vstack(boxes), np.concatenate(owners)


def detect_non_neighboring(cluster: Cluster, sampled: SampledGrid,
                           index: SpatialIndex) -> NonNeighboringSet:
    """Sampled lattice points whose eps-ball contains no cluster point."""
    spec = sampled.spec
    _check_consistent(index, spec, cluster)
    queries = sampled.index_array
    if queries.shape[0] == 0:
        return NonNeighboringSet(frozenset())
    eps2 = spec.eps * spec.eps
    qflat = _flat(queries, spec.counts)
    qorder = np.sort(qflat)

    G, owners = _candidate_pairs(cluster, spec)
    gflat = _flat(G, spec.counts)
    keep = np.isin(gflat, qorder)
    G, owners, gflat = G[keep], owners[keep], gflat[keep]
    pts = lattice_points(spec, G) if len(G) else np.empty((0, cluster.dims))
    d2 = ((pts - cluster.coords[owners]) ** 2).sum(axis=1)
    covered_flat = np.unique(gflat[d2 <= eps2])
    uncovered = ~np.isin(qflat, covered_flat)
    members = frozenset(map(tuple, queries[uncovered].tolist()))
    return NonNeighboringSet(members)


def probe_indices(spec: GridSpec, nonneigh: NonNeighboringSet) -> np.ndarray:
    """Lattice neighbors of the uncovered points, minus those points themselves.

    Sorted (m, p) array; these are the probe locations adjacent to the
    cluster's covered region.
    """
    if not nonneigh.members:
        return np.empty((0, spec.dims), dtype=np.int64)
    T = np.array(sorted(nonneigh.members), dtype=np.int64)
    counts = spec.counts
    parts = []
    for d in range(spec.dims):
        for delta in (-1, 1):
            nb = T.copy()
            nb[:, d] += delta
            inside = (nb[:, d] >= 0) & (nb[:, d] < counts[d])
            parts.append(nb[inside])
    if not parts:
        return np.empty((0, spec.dims), dtype=np.int64)
    U = np.unique(np.vstack(parts), axis=0)
    tflat = np.sort(_flat(T, counts))
    return U[~np.isin(_flat(U, counts), tflat)]


def detect_marginal(cluster: Cluster, nonneigh: NonNeighboringSet,
                    spec: GridSpec, index: SpatialIndex) -> MarginalSet:
    """Nearest cluster point (lowest id on ties) for each covered probe."""
    _check_consistent(index, spec, cluster)
    probes = probe_indices(spec, nonneigh)
    if probes.shape[0] == 0:
        return MarginalSet(members=(), provenance={}, probes_examined=0)
    eps2 = spec.eps * spec.eps
    pflat = _flat(probes, spec.counts)
    porder = np.sort(pflat)

    G, owners = _candidate_pairs(cluster, spec)
    gflat = _flat(G, spec.counts)
    keep = np.isin(gflat, porder)
    G, owners, gflat = G[keep], owners[keep], gflat[keep]
    pts = lattice_points(spec, G) if len(G) else np.empty((0, cluster.dims))
    d2 = ((pts - cluster.coords[owners]) ** 2).sum(axis=1)
    hit = d2 <= eps2
    gflat, owners, d2 = gflat[hit], owners[hit], d2[hit]

    provenance: dict[int, list[LatticeIndex]] = {}
    if len(gflat):
        # Per probe: minimum distance first, then lowest cluster id.
        order = np.lexsort((owners, d2, gflat))
        gflat, owners = gflat[order], owners[order]
        first = np.ones(len(gflat), dtype=bool)
        first[1:] = gflat[1:] != gflat[:-1]
        sel_flat = gflat[first]
        sel_ids = owners[first]
        sel_idx = np.stack(np.unravel_index(sel_flat, spec.counts), axis=1)
        for probe, pid in sorted(zip(map(tuple, sel_idx.tolist()), sel_ids.tolist())):
            provenance.setdefault(int(pid), []).append(probe)
    members = tuple(sorted(provenance))
    return MarginalSet(
        members=members,
        provenance={pid: tuple(ps) for pid, ps in provenance.items()},
        probes_examined=int(probes.shape[0]),
    )
