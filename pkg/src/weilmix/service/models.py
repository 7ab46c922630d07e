"""Pydantic request/response models for the bounds service.

Exact rationals always travel as "numerator/denominator" strings next to a
float rendering, never as floats alone; Monte Carlo responses echo seed and
sample counts so any output is reproducible from the response body."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from .. import SCHEMA_VERSION, __version__

FamilyName = Literal["gl", "gu", "sp-odd", "sp-even"]
VariantName = Literal["linear", "unitary"]


class SpecEcho(BaseModel):
    family: FamilyName
    n: int
    q: int
    variant: Optional[VariantName] = None


class ResponseBase(BaseModel):
    schema_version: int = SCHEMA_VERSION
    library_version: str = __version__
    command: str
    spec: Optional[SpecEcho] = None


class BoundsRequest(BaseModel):
    family: FamilyName
    n: int = Field(ge=1)
    q: int = Field(ge=2)
    variant: Optional[VariantName] = None
    r_min: int = Field(ge=0)
    r_max: int = Field(ge=0)
    exact_sum: bool = False

    @field_validator("r_max")
    @classmethod
    def _range_ok(cls, v, info):
        if "r_min" in info.data and v < info.data["r_min"]:
            raise ValueError("r_max must be >= r_min")
        return v


class BoundsRow(BaseModel):
    r: int
    upper_closed: Optional[float] = None  # rounded up
    upper_from_sum: Optional[float] = None  # rounded up
    upper_tv: float  # rounded up
    lower_closed: Optional[float] = None  # rounded down
    lower_chebyshev: float  # rounded down
    lower_tv: float  # rounded down
    exact_char_sum: Optional[str] = None  # "p/q"
    provenance: str = "closed-form"


class BoundsResponse(ResponseBase):
    command: str = "bounds"
    rounding: str = "upper bounds rounded up, lower bounds rounded down"
    rows: list[BoundsRow]


class DistRequest(BaseModel):
    family: FamilyName
    n: int = Field(ge=1)
    q: int = Field(ge=2)
    what: Literal["fixed-space", "pair-codim", "sp-classes"]
    mode: Literal["c-pairs", "all"] = "c-pairs"


class DistRow(BaseModel):
    key: str
    numerator: int
    denominator: int
    value: float
    provenance: str = "exact"

    @property
    def rational(self) -> str:
        return f"{self.numerator}/{self.denominator}"


class DistResponse(ResponseBase):
    command: str = "dist"
    what: str
    mode: Optional[str] = None
    rows: list[DistRow]


class SimulateRequest(BaseModel):
    family: FamilyName
    n: int = Field(ge=1)
    q: int = Field(ge=2)
    what: Literal["fixed-space", "transv-product"]
    steps: int = Field(default=2, ge=1)
    samples: int = Field(ge=0)
    seed: int = Field(ge=0, lt=1 << 64)
    threads: int = Field(default=1, ge=1)
    transv_class: Optional[Literal["c", "c-star", "all"]] = None


class SimulateRow(BaseModel):
    key: str
    count: int
    frequency: float
    stderr: float
    provenance: str = "monte-carlo"


class SimulateResponse(ResponseBase):
    command: str = "simulate"
    what: str
    steps: Optional[int] = None
    samples: int
    seed: int
    threads: int
    rows: list[SimulateRow]


class VerifyRequest(BaseModel):
    level: Literal["quick", "full"] = "quick"


class CheckRow(BaseModel):
    name: str
    status: Literal["ExactMatch", "WithinTolerance", "FAIL"]
    details: str


class VerifyResponse(ResponseBase):
    command: str = "verify"
    level: str
    n_checks: int
    n_fail: int
    ok: bool
    checks: list[CheckRow]


class HealthResponse(BaseModel):
    status: str = "ok"
    library_version: str = __version__
    schema_version: int = SCHEMA_VERSION
