"""Pydantic request/response models for the service API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class ClassifyRequest(BaseModel):
    dim: int = Field(ge=2, description="hyperboloid dimension l")
    point: list[float]
    samples: int = Field(default=512, ge=2)
    seed: int = 0
    tol_sing: float = Field(default=1e-9, gt=0.0)
    tol_rank: float = Field(default=1e-9, gt=0.0)


class ClassifyResponse(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    point: list[float]
    adjustment: float
    cls: str
    witness: Optional[list[float]] = None
    j1_norm_sq: float
    singularity_branch: str
    orbit_open_an: bool
    orbit_open_anbar: bool

    model_config = {"populate_by_name": True}


class HorizonRequest(BaseModel):
    dim: int = Field(ge=3)
    mode: Literal["k-circle", "planar", "seeds"] = "k-circle"
    count: int = Field(default=1, ge=1)
    steps: int = Field(default=30, ge=1)
    samples: int = Field(default=512, ge=2)
    seed: int = 0
    point_in: Optional[list[float]] = None
    point_out: Optional[list[float]] = None


class HorizonRow(BaseModel):
    point: list[float]
    cls: str = "Horizon"
    residual_u2_x2: Optional[float] = None   # only meaningful for l = 3
    residual_theta: float


class HorizonResponse(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    dim: int
    rows: list[HorizonRow]

    model_config = {"populate_by_name": True}


class VerifyRequest(BaseModel):
    suite: Literal["algebra", "orbits", "causal", "btz", "ads2", "all"] = "all"


class CheckResultModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    ok: bool
    passed: int
    failed: int
    suites: dict[str, list[CheckResultModel]]
    first_counterexample: Optional[str] = None

    model_config = {"populate_by_name": True}


class Ads2Request(BaseModel):
    samples: int = Field(default=1000, ge=1)
    seed: int = 0


class Ads2Response(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    samples: int
    escapes: int
    status: str

    model_config = {"populate_by_name": True}


class BtzRequest(BaseModel):
    count: int = Field(default=10, ge=1)
    rho_max: float = Field(default=1.5, gt=0.0)
    theta: float = 0.0
    branch: Literal["+", "-", "both"] = "both"


class BtzRow(BaseModel):
    rho: float
    branch: int
    tau: float
    point: list[float]
    residual_u2_x2: float


class BtzResponse(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    rows: list[BtzRow]

    model_config = {"populate_by_name": True}


class AlgebraResponse(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    dim: int
    generators: dict[str, list[list[float]]]
    families: dict[str, list[list[list[float]]]]
    root_labels: dict[str, list[int]]

    model_config = {"populate_by_name": True}
