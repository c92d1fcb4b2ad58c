"""Pydantic request/response models for the service API.

Every response carries ``schema_version`` so clients can detect layout
changes; column/field names are shared with the CLI output.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class HealthResponse(BaseModel):
    status: str
    version: str
    schema_version: int = SCHEMA_VERSION


class PointModel(BaseModel):
    beta0: float
    eta0: float


class ThresholdReportResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    n: int
    ed_beta0: float
    triple_point: PointModel
    ck_intersection: PointModel


class CurvePointModel(BaseModel):
    curve: str
    beta0: float
    eta0: float


class CurvesResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    n: int
    grid: int
    points: list[CurvePointModel]


class ADTableRowModel(BaseModel):
    block_length: int
    bob_error: float
    eve_error: float
    accept_rate: float
    bob_error_ratio: float
    eve_error_ratio: float
    bob_ratio_limit: float
    eve_ratio_limit: float


class ADTableResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    n: int
    beta0: float
    rows: list[ADTableRowModel]


class SimulateRequest(BaseModel):
    n: int
    beta0: float
    block_length: int
    num_blocks: int = 10**6
    seed: int = 0
    workers: int = Field(default=1, description="execution detail; not echoed")


class RateComparisonModel(BaseModel):
    name: str
    empirical: float
    exact: float
    std_error: float
    z_score: float
    within_band: bool


class SimulateResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    n: int
    beta0: float
    block_length: int
    num_blocks: int
    seed: int
    accepted_blocks: int
    bob_wrong_blocks: int
    bob_correct_blocks: int
    eve_wrong_given_bob_correct: int
    eve_correct_given_bob_wrong: int
    acceptance: RateComparisonModel
    bob_error: RateComparisonModel
    eve_error: RateComparisonModel


class VerifyRequest(BaseModel):
    level: str = "quick"


class CheckModel(BaseModel):
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    cases: int


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    level: str
    passed: bool
    checks: list[CheckModel]
