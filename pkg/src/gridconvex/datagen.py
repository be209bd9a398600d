"""Synthetic 2-D cluster generators: ring, crescent, disk, rectangle.

Points are uniform over the shape's area via rejection sampling from the
bounding box, seeded and reproducible.  Membership predicates use exact
squared comparisons, so every generated point satisfies its shape's predicate
verbatim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .geometry import Cluster

__all__ = ["SHAPE_KINDS", "ShapeSpec", "generate", "load_shape_spec"]

SHAPE_KINDS = ("ring", "crescent", "disk", "rectangle")


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    n: int
    seed: int = 0
    center: tuple[float, float] = (0.0, 0.0)
    r_inner: float | None = None
    r_outer: float | None = None
    radius: float | None = None
    cutter_center: tuple[float, float] | None = None
    cutter_radius: float | None = None
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None

    def validate(self) -> None:
        if self.kind not in SHAPE_KINDS:
            raise ParameterError(f"unknown shape kind {self.kind!r}")
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if self.kind == "ring":
            if self.r_inner is None or self.r_outer is None:
                raise ParameterError("ring needs r_inner and r_outer")
            if not 0 < self.r_inner < self.r_outer:
                raise ParameterError(
                    f"ring needs 0 < r_inner < r_outer, got {self.r_inner}, {self.r_outer}")
        elif self.kind == "crescent":
            if self.radius is None or self.cutter_center is None or self.cutter_radius is None:
                raise ParameterError("crescent needs radius, cutter_center, cutter_radius")
            if self.radius <= 0 or self.cutter_radius <= 0:
                raise ParameterError("crescent radii must be positive")
            gap = float(np.hypot(self.cutter_center[0] - self.center[0],
                                 self.cutter_center[1] - self.center[1]))
            if gap >= self.radius + self.cutter_radius:
                raise ParameterError("cutter does not overlap the disk; nothing is removed")
            if gap + self.radius <= self.cutter_radius:
                raise ParameterError("cutter swallows the whole disk; crescent is empty")
        elif self.kind == "disk":
            if self.radius is None or self.radius <= 0:
                raise ParameterError("disk needs a positive radius")
        elif self.kind == "rectangle":
            if self.x_range is None or self.y_range is None:
                raise ParameterError("rectangle needs x_range and y_range")
            if not (self.x_range[0] < self.x_range[1] and self.y_range[0] < self.y_range[1]):
                raise ParameterError("rectangle has zero or negative area")

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        cx, cy = self.center
        if self.kind == "ring":
            r = self.r_outer
            return np.array([cx - r, cy - r]), np.array([cx + r, cy + r])
        if self.kind in ("crescent", "disk"):
            r = self.radius
            return np.array([cx - r, cy - r]), np.array([cx + r, cy + r])
        return (np.array([self.x_range[0], self.y_range[0]]),
                np.array([self.x_range[1], self.y_range[1]]))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Exact membership mask for an (m, 2) array."""
        pts = np.asarray(points, dtype=np.float64)
        c = np.asarray(self.center, dtype=np.float64)
        if self.kind == "ring":
            d2 = ((pts - c) ** 2).sum(axis=1)
            return (d2 >= self.r_inner**2) & (d2 <= self.r_outer**2)
        if self.kind == "disk":
            return ((pts - c) ** 2).sum(axis=1) <= self.radius**2
        if self.kind == "crescent":
            cc = np.asarray(self.cutter_center, dtype=np.float64)
            inside = ((pts - c) ** 2).sum(axis=1) <= self.radius**2
            outside_cutter = ((pts - cc) ** 2).sum(axis=1) > self.cutter_radius**2
            return inside & outside_cutter
        x_ok = (pts[:, 0] >= self.x_range[0]) & (pts[:, 0] <= self.x_range[1])
        y_ok = (pts[:, 1] >= self.y_range[0]) & (pts[:, 1] <= self.y_range[1])
        return x_ok & y_ok

    def describe(self) -> str:
        """One line of analytic parameters, used for file header comments."""
        parts = [f"shape={self.kind}", f"n={self.n}", f"seed={self.seed}",
                 f"center=({self.center[0]:g},{self.center[1]:g})"]
        if self.kind == "ring":
            parts += [f"r_inner={self.r_inner:g}", f"r_outer={self.r_outer:g}"]
        elif self.kind == "crescent":
            parts += [f"radius={self.radius:g}",
                      f"cutter_center=({self.cutter_center[0]:g},{self.cutter_center[1]:g})",
                      f"cutter_radius={self.cutter_radius:g}"]
        elif self.kind == "disk":
            parts += [f"radius={self.radius:g}"]
        else:
            parts += [f"x_range=({self.x_range[0]:g},{self.x_range[1]:g})",
                      f"y_range=({self.y_range[0]:g},{self.y_range[1]:g})"]
        return " ".join(parts)


def generate(spec: ShapeSpec) -> Cluster:
    """Exactly n points uniform over the shape, deterministic given the seed."""
    spec.validate()
    lo, hi = spec.bounding_box()
    rng = np.random.Generator(np.random.PCG64(int(spec.seed)))
    collected: list[np.ndarray] = []
    have = 0
    while have < spec.n:
        batch = rng.uniform(lo, hi, size=(max(1024, 2 * (spec.n - have)), 2))
        accepted = batch[spec.contains(batch)]
        collected.append(accepted[: spec.n - have])
        have += len(collected[-1])
    return Cluster(np.vstack(collected))


def load_shape_spec(path) -> ShapeSpec:
    """Read a pinned shape configuration file (JSON)."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    fields = {
        "kind": raw["shape"],
        "n": int(raw["n"]),
        "seed": int(raw.get("seed", 0)),
        "center": tuple(raw.get("center", (0.0, 0.0))),
    }
    for key in ("r_inner", "r_outer", "radius", "cutter_radius"):
        if key in raw:
            fields[key] = float(raw[key])
    for key in ("cutter_center", "x_range", "y_range"):
        if key in raw:
            fields[key] = tuple(raw[key])
    spec = ShapeSpec(**fields)
    spec.validate()
    return spec
