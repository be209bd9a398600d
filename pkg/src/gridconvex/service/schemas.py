"""Pydantic request and response models for the HTTP service and the CLI.

These mirror the core contracts; detailed validation stays in the core, so
requests that pass schema parsing can still fail with a 422 carrying the
core's message.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel


class ReportCounts(BaseModel):
    t: int
    sampled: int
    non_neighboring: int
    probe_points: int
    marginal: int
    pairs_tested: int


class Report(BaseModel):
    omega: bool
    witness: list[float] | None
    witness_pair: list[int] | None
    eps: float
    eta: float
    seed: int
    mode: str
    generator: str
    evidence: Literal["ok", "insufficient_grid_evidence"]
    counts: ReportCounts
    marginal_ids: list[int]
    version: str


class AnalyzeRequest(BaseModel):
    points: list[list[float]]
    eps: float | None = None
    auto_eps: bool = False
    min_pts: int | None = None
    resolution: float = 0.02
    eta: float = 1.0
    seed: int = 0
    mode: Literal["first", "exhaustive"] = "first"
    project_dims: int | None = None
    subsample_rate: float | None = None
    include_svg: bool = False


class AnalyzeResponse(BaseModel):
    report: Report
    svg: str | None = None
    warnings: list[str] = []


class GenerateRequest(BaseModel):
    shape: Literal["ring", "crescent", "disk", "rectangle"]
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


class GenerateResponse(BaseModel):
    points: list[list[float]]
    description: str


class SelectEpsRequest(BaseModel):
    points: list[list[float]]
    min_pts: int | None = None
    resolution: float = 0.02


class SelectEpsResponse(BaseModel):
    eps: float
    min_pts: int


class HealthResponse(BaseModel):
    status: str
    version: str
