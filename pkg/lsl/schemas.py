# lsl/schemas.py
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from lsl.combinatorics import SubsetIndex
from lsl.config import Tolerances, settings
from lsl.morse import FlowSpec
from lsl.ring import ExteriorClass
from lsl.spectral_flow import UnitaryLoop


class MatrixPayload(BaseModel):
    """Row-major complex matrix as [re, im] pairs."""

    rows: int = Field(..., ge=1, description="Number of rows")
    cols: int = Field(..., ge=1, description="Number of columns")
    data: List[List[float]] = Field(..., description="Row-major [re, im] entries")

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.data) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.data)}")
        if any(len(pair) != 2 for pair in self.data):
            raise ValueError("every entry must be an [re, im] pair")
        return self

    @classmethod
    def from_array(cls, M: np.ndarray) -> "MatrixPayload":
        M = np.asarray(M, dtype=complex)
        rows, cols = M.shape
        data = [[float(z.real), float(z.imag)] for z in M.reshape(-1)]
        return cls(rows=rows, cols=cols, data=data)

    def to_array(self) -> np.ndarray:
        flat = np.array([complex(re, im) for re, im in self.data])
        return flat.reshape(self.rows, self.cols)


class SubsetPayload(BaseModel):
    n: int = Field(..., ge=1)
    members: List[int] = Field(default_factory=list, description="Sorted members")

    @field_validator("members", mode="after")
    def sort_members(cls, v):
        return sorted(v)

    @classmethod
    def from_subset(cls, I: SubsetIndex) -> "SubsetPayload":
        return cls(n=I.n, members=list(I.members))

    def to_subset(self) -> SubsetIndex:
        return SubsetIndex.of(self.n, self.members)


class FramePayload(BaseModel):
    n: int = Field(..., ge=1)
    frame: MatrixPayload

    @classmethod
    def from_array(cls, F: np.ndarray) -> "FramePayload":
        return cls(n=F.shape[1], frame=MatrixPayload.from_array(F))


class TermPayload(BaseModel):
    I: List[int]
    c: int


class ClassPayload(BaseModel):
    n: int = Field(..., ge=1)
    terms: List[TermPayload] = Field(default_factory=list)

    @classmethod
    def from_class(cls, x: ExteriorClass) -> "ClassPayload":
        terms = [TermPayload(I=list(I.members), c=c) for I, c in x.items()]
        return cls(n=x.n, terms=terms)

    def to_class(self) -> ExteriorClass:
        items: Dict[SubsetIndex, int] = {}
        for term in self.terms:
            I = SubsetIndex.of(self.n, term.I)
            items[I] = items.get(I, 0) + term.c
        return ExteriorClass.from_items(self.n, items)


class LoopSamplePayload(BaseModel):
    theta: float
    S: MatrixPayload


def loop_from_payload(samples: List[Dict[str, Any]], closed: bool = True) -> UnitaryLoop:
    parsed = [LoopSamplePayload(**item) for item in samples]
    return UnitaryLoop(
        theta=[p.theta for p in parsed],
        samples=[p.S.to_array() for p in parsed],
        closed=closed,
    )


class RunConfig(BaseModel):
    """Validated command configuration; file values are overridden by command-line flags."""

    n: int = Field(default=2, ge=1)
    spec: str = Field(default="default", description="Flow eigenvalues or 'default'")
    seed: int = Field(default_factory=lambda: settings.seed)
    tol_phase: float = Field(default_factory=lambda: settings.tol_phase, gt=0)
    tol_rank: float = Field(default_factory=lambda: settings.tol_rank, gt=0)
    tol_unit: float = Field(default_factory=lambda: settings.tol_unit, gt=0)
    tol_herm: float = Field(default_factory=lambda: settings.tol_herm, gt=0)
    budget: int = Field(default_factory=lambda: settings.witness_budget, ge=0)
    samples: int = Field(default=20, ge=1, description="Random samples per case group")
    t_max: Optional[float] = Field(default=None, gt=0)
    format: Literal["json", "csv", "dot"] = "json"
    out: Optional[str] = None
    suite: Optional[str] = None

    @model_validator(mode="after")
    def check_spec(self):
        self.flow_spec()
        return self

    @classmethod
    def load(cls, path: Optional[Union[str, Path]], **overrides: Any) -> "RunConfig":
        """YAML or JSON file (optional) merged with non-None overrides."""
        values: Dict[str, Any] = {}
        if path:
            with open(path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f) or {}
            if not isinstance(loaded, dict):
                raise ValueError(f"config file {path} must hold a mapping")
            values.update(loaded)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def flow_spec(self) -> FlowSpec:
        return FlowSpec.parse(self.spec, self.n)

    def tolerances(self) -> Tolerances:
        return settings.tolerances.model_copy(
            update={
                "phase": self.tol_phase,
                "rank": self.tol_rank,
                "unit": self.tol_unit,
                "herm": self.tol_herm,
            }
        )


class FlowRecord(BaseModel):
    backward: SubsetPayload
    forward: SubsetPayload
    morse_initial: float
    morse_final: float


class SnapshotPayload(BaseModel):
    """Flowed unitary Φ_t(S) at one requested time."""

    t: float
    matrix: MatrixPayload


class CaseResult(BaseModel):
    case_id: str
    passed: bool
    error: float = 0.0
    detail: Optional[str] = None


class SuiteReport(BaseModel):
    suite: str
    cases: int
    failures: int
    max_error: float
    failed_cases: List[str] = Field(default_factory=list)


class VerifyReport(BaseModel):
    n: int
    seed: int
    suites: List[SuiteReport]
    passed: bool


class StandardResponse(BaseModel):
    outcome: Literal["success", "error"]
    result: Optional[dict] = None
    message: Optional[str] = None
