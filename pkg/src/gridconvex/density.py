"""DBSCAN and the grid-accuracy selection rule built on it.

The cell size of the coverage lattice doubles as the DBSCAN neighborhood
radius: the radius is chosen as the smallest candidate for which DBSCAN
reports exactly one cluster and no noise, which makes the lattice fine enough
to trace the frontier yet coarse enough that the covered region stays
connected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import EpsilonSearchError, ParameterError
from .geometry import Cluster
from .spatial import build_index, ids_within

__all__ = ["NOISE", "DbscanResult", "dbscan", "select_eps"]

NOISE = 0  # label value for noise points; clusters are numbered 1..k


@dataclass(frozen=True)
class DbscanResult:
    labels: np.ndarray
    k: int
    min_pts: int
    eps: float

    def __post_init__(self):
        arr = np.ascontiguousarray(self.labels, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)

    @property
    def noise_count(self) -> int:
        return int((self.labels == NOISE).sum())


def dbscan(cluster: Cluster, eps: float, min_pts: int) -> DbscanResult:
    """Classic density-based clustering by reachability expansion.

    A point is core when its closed eps-ball holds at least ``min_pts`` points
    (itself included).  Clusters are grown from core points in scan order, and
    border points belong to whichever cluster claims them first.
    """
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    if not min_pts >= 1:
        raise ParameterError(f"min_pts must be >= 1, got {min_pts}")
    index = build_index(cluster, eps)
    n = cluster.n
    labels = np.zeros(n, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)
    k = 0
    for i in range(n):
        if visited[i]:
            continue
        visited[i] = True
        seeds = ids_within(index, cluster.coords[i], eps)
        if len(seeds) < min_pts:
            continue  # noise unless a later expansion claims it as border
        k += 1
        labels[i] = k
        queue = deque(int(j) for j in seeds if j != i)
        while queue:
            j = queue.popleft()
            if labels[j] == NOISE:
                labels[j] = k
            if visited[j]:
                continue
            visited[j] = True
            reach = ids_within(index, cluster.coords[j], eps)
            if len(reach) >= min_pts:
                queue.extend(int(x) for x in reach if not visited[x] or labels[x] == NOISE)
    return DbscanResult(labels=labels, k=k, min_pts=int(min_pts), eps=float(eps))


def _pairwise_stats(coords: np.ndarray) -> tuple[float, float, float]:
    """(min positive distance, diameter, largest nearest-neighbor distance)."""
    n = coords.shape[0]
    d_min = np.inf
    d_max = 0.0
    max_nn = 0.0
    chunk = max(1, min(n, 2_000_000 // max(n, 1) + 1))
    for start in range(0, n, chunk):
        block = coords[start:start + chunk]
        d2 = ((block[:, None, :] - coords[None, :, :]) ** 2).sum(axis=-1)
        for r in range(block.shape[0]):
            d2[r, start + r] = np.inf
        row_min = d2.min(axis=1)
        max_nn = max(max_nn, float(np.sqrt(row_min[np.isfinite(row_min)].max(initial=0.0))))
        pos = d2[(d2 > 0.0) & np.isfinite(d2)]
        if pos.size:
            d_min = min(d_min, float(np.sqrt(pos.min())))
        finite = d2[np.isfinite(d2)]
        if finite.size:
            d_max = max(d_max, float(np.sqrt(finite.max())))
    return d_min, d_max, max_nn


def select_eps(cluster: Cluster, min_pts: int, resolution: float = 0.02) -> float:
    """Smallest ladder radius giving one cluster and zero noise.

    Candidates form a geometric ladder from the minimum positive
    nearest-neighbor distance up to the dataset diameter, with consecutive
    values differing by at most ``resolution`` relatively.  The predicate is
    checked by running DBSCAN at each candidate, ascending, and is never
    assumed monotone.  Candidates below the largest nearest-neighbor distance
    are skipped: at such radii some point is isolated, which forces either a
    noise point or a second cluster, so the predicate provably fails there.
    """
    if not min_pts >= 1:
        raise ParameterError(f"min_pts must be >= 1, got {min_pts}")
    if cluster.n < min_pts:
        raise ParameterError(
            f"cluster has {cluster.n} points, fewer than min_pts {min_pts}")
    if not resolution > 0:
        raise ParameterError(f"resolution must be positive, got {resolution}")
    d_min, d_max, max_nn = _pairwise_stats(cluster.coords)
    if not np.isfinite(d_min):
        raise EpsilonSearchError(
            "no unique-cluster eps found: cluster has zero extent, any radius "
            "works equally; choose eps directly")
    ratio = 1.0 + resolution
    eps = d_min
    ladder = [eps]
    while eps < d_max:
        eps *= ratio
        ladder.append(eps)
    for candidate in ladder:
        if cluster.n >= 2 and candidate < max_nn:
            continue
        result = dbscan(cluster, candidate, min_pts)
        if result.k == 1 and result.noise_count == 0:
            return float(candidate)
    raise EpsilonSearchError("no unique-cluster eps found on the candidate ladder")
