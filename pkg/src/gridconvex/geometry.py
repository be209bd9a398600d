"""Point-level primitives: clusters, distances, midpoints, neighborhood tests.

Every distance comparison in the package funnels through the squared-distance
kernel defined here so that boundary cases (distance exactly equal to the
neighborhood radius) are decided identically everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "Cluster",
    "as_point",
    "squared_distance",
    "distance",
    "midpoint",
    "in_eps_neighborhood",
]


def as_point(value) -> np.ndarray:
    """Coerce to a finite 1-D float64 coordinate vector."""
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ParameterError(f"point must be a 1-D coordinate sequence, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("point coordinates must be finite")
    return arr


@dataclass(frozen=True)
class Cluster:
    """An (n, p) array of points, all sharing the same dimensionality.

    The coordinate array is made read-only on construction; every operation in
    the package treats clusters as immutable values.
    """

    coords: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.coords, dtype=np.float64)
        if arr.ndim != 2:
            raise ParameterError(f"cluster coordinates must be 2-D (n, p), got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError("cluster needs at least one point with at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("cluster coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_rows(cls, rows) -> "Cluster":
        return cls(np.asarray(rows, dtype=np.float64))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dims(self) -> int:
        return self.coords.shape[1]


def _matched(a, b) -> tuple[np.ndarray, np.ndarray]:
    pa, pb = as_point(a), as_point(b)
    if pa.shape != pb.shape:
        raise ParameterError(f"dimensionality mismatch: {pa.shape[0]} vs {pb.shape[0]}")
    return pa, pb


def squared_distance(a, b) -> float:
    """Squared Euclidean distance, the shared comparison kernel."""
    pa, pb = _matched(a, b)
    return float(((pa - pb) ** 2).sum())


def distance(a, b) -> float:
    """Euclidean distance between two points of equal dimensionality."""
    return float(np.sqrt(squared_distance(a, b)))


def midpoint(a, b) -> np.ndarray:
    """Coordinate-wise mean of two points of equal dimensionality."""
    pa, pb = _matched(a, b)
    return (pa + pb) / 2.0


def in_eps_neighborhood(x, y, eps: float) -> bool:
    """Closed-ball membership test: true iff distance(x, y) <= eps.

    Compares squared distance against eps**2, with no added tolerance, so the
    boundary is included exactly as IEEE arithmetic decides it.
    """
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    return squared_distance(x, y) <= eps * eps
