"""Lattice construction, random lattice sampling, and lattice-point geometry.

The lattice covering the cluster is anchored two cells beyond the data extent
on every side, so the outermost lattice planes are guaranteed to fall outside
the region covered by the cluster.  Lattice points are stored as integer index
tuples; their float coordinates are realized on demand, with compensated
arithmetic so each coordinate is correctly rounded (plain ``origin + i * eps``
drifts by many ulps at large indices, which would break the exact-spacing
guarantee between neighboring lattice points).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import GridTooLargeError, ParameterError
from .geometry import Cluster

__all__ = [
    "GENERATOR_NAME",
    "GRID_TOTAL_LIMIT",
    "GridSpec",
    "SampledGrid",
    "build_spec",
    "sample_grid",
    "lattice_neighbors",
    "lattice_to_point",
    "lattice_points",
]

# Identity of the pseudo-random generator used for every seeded draw in the
# package; recorded in analysis reports so runs can be replayed.
GENERATOR_NAME = "pcg64"

# Largest supported number of lattice points (fits signed 64-bit flat indices).
GRID_TOTAL_LIMIT = 2**63 - 1

# Largest sample that may be materialized as explicit lattice indices.
SAMPLE_POINT_LIMIT = 2**23

LatticeIndex = tuple[int, ...]

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_prod(a: np.ndarray, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact product a*b = x + err for float64 inputs."""
    x = a * b
    c = _SPLIT * a
    a_hi = c - (c - a)
    a_lo = a - a_hi
    c = _SPLIT * b
    b_hi = c - (c - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - x) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return x, err


def _two_sum(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact sum a+b = s + err for float64 inputs."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@dataclass(frozen=True)
class GridSpec:
    """Lattice geometry: per-dimension anchor, cell size, and point counts."""

    origin: np.ndarray
    eps: float
    counts: tuple[int, ...]

    def __post_init__(self):
        arr = np.ascontiguousarray(self.origin, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "origin", arr)
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @property
    def dims(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return math.prod(self.counts)

    def validate_index(self, idx: LatticeIndex) -> None:
        if len(idx) != self.dims or any(
            not 0 <= int(v) < c for v, c in zip(idx, self.counts)
        ):
            raise ParameterError(f"lattice index {idx} invalid for counts {self.counts}")


def build_spec(cluster: Cluster, eps: float) -> GridSpec:
    """Build the lattice covering the cluster extent padded by 2*eps per side.

    Per dimension: origin = min - 2*eps and counts = floor((span + 4*eps)/eps) + 1,
    bumped upward if float rounding would leave the padded maximum uncovered
    (coverage must err outward, never inward).
    """
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    lo = cluster.coords.min(axis=0)
    hi = cluster.coords.max(axis=0)
    origin = lo - 2.0 * eps
    counts = []
    for i in range(cluster.dims):
        c = int(math.floor((hi[i] - lo[i] + 4.0 * eps) / eps)) + 1
        while origin[i] + (c - 1) * eps < hi[i] + 2.0 * eps:
            c += 1
        counts.append(c)
    total = math.prod(counts)
    if total > GRID_TOTAL_LIMIT:
        raise GridTooLargeError(
            f"grid would have {total} lattice points (limit {GRID_TOTAL_LIMIT}); "
            "reduce dimensionality (random projection) and/or subsample the "
            "cluster before analysis"
        )
    return GridSpec(origin=origin, eps=float(eps), counts=tuple(counts))


@dataclass(frozen=True)
class SampledGrid:
    """The subset of lattice points drawn at rate eta, as integer indices.

    ``index_array`` holds the same members as a sorted (m, p) int64 array for
    batch operations.
    """

    spec: GridSpec
    eta: float
    seed: int
    members: frozenset[LatticeIndex]
    index_array: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.index_array, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "index_array", arr)

    @property
    def size(self) -> int:
        return len(self.members)


def sample_grid(spec: GridSpec, eta: float, seed: int) -> SampledGrid:
    """Draw round(eta * total) distinct lattice indices, seeded and reproducible.

    Each candidate is drawn by sampling every dimension's index uniformly and
    independently; duplicates are redrawn until the target count of distinct
    members is reached (clamped to at least one).  eta = 1 enumerates the full
    lattice directly, with no randomness.  Rounding is half-up so the sample
    size is a stable function of eta.
    """
    if not 0 < eta <= 1:
        raise ParameterError(f"eta must be in (0, 1], got {eta}")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed!r}")
    counts = np.asarray(spec.counts, dtype=np.int64)
    target = spec.total if eta == 1 else max(1, math.floor(eta * spec.total + 0.5))
    if target > SAMPLE_POINT_LIMIT:
        raise GridTooLargeError(
            f"grid sample would materialize {target} lattice points (limit "
            f"{SAMPLE_POINT_LIMIT}); lower eta, coarsen eps, reduce "
            "dimensionality (random projection), or subsample the cluster")
    if eta == 1:
        arr = np.indices(spec.counts).reshape(spec.dims, -1).T.astype(np.int64)
        members = frozenset(map(tuple, arr.tolist()))
        return SampledGrid(spec=spec, eta=1.0, seed=int(seed), members=members,
                           index_array=arr)
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    seen: set[LatticeIndex] = set()
    picked: list[LatticeIndex] = []
    while len(picked) < target:
        batch = rng.integers(0, counts, size=(max(1024, target - len(picked)), spec.dims),
                             dtype=np.int64)
        for row in map(tuple, batch.tolist()):
            if row not in seen:
                seen.add(row)
                picked.append(row)
                if len(picked) == target:
                    break
    arr = np.array(sorted(picked), dtype=np.int64)
    return SampledGrid(spec=spec, eta=float(eta), seed=int(seed),
                       members=frozenset(picked), index_array=arr)


def lattice_neighbors(spec: GridSpec, idx: LatticeIndex) -> list[LatticeIndex]:
    """Lattice points one cell away along each axis, clipped at the extrema.

    Interior points have exactly 2p neighbors; boundary points fewer.  The
    result has no duplicates and a fixed deterministic order.
    """
    spec.validate_index(idx)
    idx = tuple(int(v) for v in idx)
    out: list[LatticeIndex] = []
    for i, (v, c) in enumerate(zip(idx, spec.counts)):
        if v - 1 >= 0:
            out.append(idx[:i] + (v - 1,) + idx[i + 1:])
        if v + 1 < c:
            out.append(idx[:i] + (v + 1,) + idx[i + 1:])
    return out


def _lattice_coords(origin: np.ndarray, eps: float, idx: np.ndarray) -> np.ndarray:
    # Compensated origin + idx*eps: the double-double accumulation keeps every
    # coordinate correctly rounded, so adjacent lattice points differ from eps
    # by no more than the final-rounding limit of the coordinates themselves.
    idxf = idx.astype(np.float64)
    prod, e1 = _two_prod(idxf, eps)
    s, e2 = _two_sum(origin, prod)
    return s + (e1 + e2)


def lattice_to_point(spec: GridSpec, idx: LatticeIndex) -> np.ndarray:
    """Float coordinates of a lattice index: origin + idx * eps per dimension."""
    spec.validate_index(idx)
    return _lattice_coords(spec.origin, spec.eps, np.asarray(idx, dtype=np.int64))


def lattice_points(spec: GridSpec, idx_array: Iterable) -> np.ndarray:
    """Vectorized ``lattice_to_point`` over an (m, p) array of indices."""
    arr = np.asarray(idx_array, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[1] != spec.dims:
        raise ParameterError(f"index array has {arr.shape[1]} dims, spec has {spec.dims}")
    if arr.size and (arr.min() < 0 or (arr >= np.asarray(spec.counts)).any()):
        raise ParameterError("index array contains out-of-range lattice indices")
    return _lattice_coords(spec.origin[None, :], spec.eps, arr)
