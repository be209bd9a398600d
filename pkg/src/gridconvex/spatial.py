"""Fixed-radius neighbor queries over a cluster via an eps-sized bucket grid.

Points are hashed into cells of side eps.  A query gathers the candidate ids
from the cells surrounding its own cell and decides membership with exact
squared-distance comparisons, so answers match a full linear scan bit for bit,
including ties.

The candidate halo spans two cells per axis, not one.  Queries that sit on a
cell boundary (lattice points do, systematically) can have their cell index
rounded one cell away from the true one by the float division, and a point at
distance exactly eps can land one further; two cells cover the worst case,
one does not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import ParameterError
from .geometry import Cluster

__all__ = [
    "SpatialIndex",
    "build_index",
    "any_within",
    "nearest_within",
    "ids_within",
    "covered_mask",
]

_HALO_REACH = 2


@dataclass
class SpatialIndex:
    """Bucket index over one cluster at a fixed query radius."""

    cell_size: float
    dims: int
    coords: np.ndarray
    buckets: dict[tuple[int, ...], np.ndarray]
    _offsets: list[tuple[int, ...]] = field(repr=False, default_factory=list)
    _halo: dict[tuple[int, ...], np.ndarray] = field(repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def _cell_of(self, q: np.ndarray) -> tuple[int, ...]:
        return tuple(np.floor(q / self.cell_size).astype(np.int64).tolist())

    def _candidates(self, cell: tuple[int, ...]) -> np.ndarray:
        cached = self._halo.get(cell)
        if cached is None:
            parts = []
            for off in self._offsets:
                ids = self.buckets.get(tuple(c + o for c, o in zip(cell, off)))
                if ids is not None:
                    parts.append(ids)
            cached = np.sort(np.concatenate(parts)) if parts else np.empty(0, np.int64)
            self._halo[cell] = cached
        return cached


def build_index(cluster: Cluster, eps: float) -> SpatialIndex:
    """Index every cluster point into its eps-cell bucket."""
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    keys = np.floor(cluster.coords / eps).astype(np.int64)
    grouped: dict[tuple[int, ...], list[int]] = {}
    for i, key in enumerate(map(tuple, keys.tolist())):
        grouped.setdefault(key, []).append(i)
    buckets = {k: np.asarray(v, dtype=np.int64) for k, v in grouped.items()}
    offsets = list(product(range(-_HALO_REACH, _HALO_REACH + 1), repeat=cluster.dims))
    return SpatialIndex(cell_size=float(eps), dims=cluster.dims,
                        coords=cluster.coords, buckets=buckets, _offsets=offsets)


def _check_eps(index: SpatialIndex, eps: float) -> float:
    if eps != index.cell_size:
        raise ParameterError(
            f"query eps {eps} does not match index cell size {index.cell_size}")
    return eps * eps


def _query(index: SpatialIndex, q) -> tuple[np.ndarray, np.ndarray]:
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (index.dims,):
        raise ParameterError(f"query point has shape {q.shape}, index has {index.dims} dims")
    cands = index._candidates(index._cell_of(q))
    if len(cands) == 0:
        return cands, np.empty(0, np.float64)
    d2 = ((index.coords[cands] - q) ** 2).sum(axis=1)
    return cands, d2


def any_within(index: SpatialIndex, q, eps: float) -> bool:
    """True iff some indexed point lies within the closed eps-ball around q."""
    eps2 = _check_eps(index, eps)
    _, d2 = _query(index, q)
    return bool((d2 <= eps2).any())


def nearest_within(index: SpatialIndex, q, eps: float):
    """Closest indexed point within eps of q as (id, distance), or None.

    Exact distance ties break toward the lowest point id.
    """
    eps2 = _check_eps(index, eps)
    cands, d2 = _query(index, q)
    if len(cands) == 0:
        return None
    masked = np.where(d2 <= eps2, d2, np.inf)
    k = int(np.argmin(masked))  # first minimum, cands sorted by id
    if masked[k] == np.inf:
        return None
    return int(cands[k]), float(np.sqrt(d2[k]))


def ids_within(index: SpatialIndex, q, eps: float) -> np.ndarray:
    """Sorted ids of all indexed points within the closed eps-ball around q."""
    eps2 = _check_eps(index, eps)
    cands, d2 = _query(index, q)
    if len(cands) == 0:
        return cands
    return cands[d2 <= eps2]


def covered_mask(index: SpatialIndex, queries: np.ndarray, eps: float) -> np.ndarray:
    """Batch ``any_within`` over an (m, p) query array, bit-identical per row.

    Queries are grouped by cell so each halo's candidate distances are
    evaluated in one vectorized pass.
    """
    eps2 = _check_eps(index, eps)
    Q = np.asarray(queries, dtype=np.float64)
    if Q.ndim != 2 or Q.shape[1] != index.dims:
        raise ParameterError(f"query array must be (m, {index.dims}), got {Q.shape}")
    out = np.zeros(Q.shape[0], dtype=bool)
    if Q.shape[0] == 0:
        return out
    keys = np.floor(Q / index.cell_size).astype(np.int64)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    for u, cell in enumerate(map(tuple, uniq.tolist())):
        cands = index._candidates(cell)
        if len(cands) == 0:
            continue
        rows = np.nonzero(inverse == u)[0]
        d2 = ((Q[rows][:, None, :] - index.coords[cands][None, :, :]) ** 2).sum(axis=-1)
        out[rows] = (d2 <= eps2).any(axis=1)
    return out
