"""Optional input reductions: sparse random projection and point subsampling.

Both exist to keep the lattice tractable when the raw input would make it
explode; both are seeded and reproducible.  Subsampling can thin the cluster
enough to distort its shape, so callers surface a warning whenever it is
applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .geometry import Cluster

__all__ = ["ProjectionMatrix", "make_projection", "random_project", "subsample_cluster"]


@dataclass(frozen=True)
class ProjectionMatrix:
    """Sparse sign-pattern projection: entries are sqrt(3/p_out) * {-1, 0, +1}.

    Signs are +1 with probability 1/6, -1 with probability 1/6, and 0
    otherwise; ``scale`` is the common entry magnitude.
    """

    entries: np.ndarray
    seed: int
    scale: float

    def __post_init__(self):
        arr = np.ascontiguousarray(self.entries, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def out_dims(self) -> int:
        return self.entries.shape[0]

    @property
    def in_dims(self) -> int:
        return self.entries.shape[1]

    def apply(self, coords: np.ndarray) -> np.ndarray:
        return coords @ self.entries.T


def make_projection(in_dims: int, out_dims: int, seed: int) -> ProjectionMatrix:
    if not 1 <= out_dims <= in_dims:
        raise ParameterError(
            f"projection dims must satisfy 1 <= out <= in, got {out_dims} of {in_dims}")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    draws = rng.integers(0, 6, size=(out_dims, in_dims))
    signs = np.where(draws == 0, 1.0, np.where(draws == 1, -1.0, 0.0))
    scale = math.sqrt(3.0 / out_dims)
    return ProjectionMatrix(entries=scale * signs, seed=int(seed), scale=scale)


def random_project(cluster: Cluster, out_dims: int, seed: int,
                   identity_bypass: bool = True) -> Cluster:
    """Map the cluster through a fresh seeded projection matrix.

    With ``identity_bypass`` (the default), asking for the input's own
    dimensionality returns the cluster unchanged.
    """
    if identity_bypass and out_dims == cluster.dims:
        return cluster
    matrix = make_projection(cluster.dims, out_dims, seed)
    return Cluster(matrix.apply(cluster.coords))


def subsample_cluster(cluster: Cluster, rate: float, seed: int) -> Cluster:
    """Uniform sample without replacement of round(rate * n) points, >= 1."""
    if not 0 < rate <= 1:
        raise ParameterError(f"rate must be in (0, 1], got {rate}")
    m = max(1, math.floor(rate * cluster.n + 0.5))
    if m >= cluster.n:
        return cluster
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    picked = np.sort(rng.choice(cluster.n, size=m, replace=False))
    return Cluster(cluster.coords[picked])
