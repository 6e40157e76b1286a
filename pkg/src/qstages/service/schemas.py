"""Request and response models for the simulator service.

Circuit and table documents travel as text in the same formats the CLI
reads from disk; gate files referenced by a circuit (``perm``/``unitary``)
are carried inline in the ``aux`` mapping.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..engine import NAIVE_MAX_DIM

Mode = Literal["naive", "efficient"]


class MetricsModel(BaseModel):
    peak_live_cells: int
    madds: int
    stages_processed: int


class AmplitudeEntry(BaseModel):
    index: int
    label: str
    re: float
    im: float
    probability: float


class RunRequest(BaseModel):
    circuit: str
    input_spec: str = "basis:0"
    amplitudes: Optional[list[tuple[float, float]]] = None
    mode: Mode = "efficient"
    max_dim: int = NAIVE_MAX_DIM
    aux: dict[str, str] = Field(default_factory=dict)


class RunResponse(BaseModel):
    register_dims: list[int]
    mode: Mode
    amplitudes: list[AmplitudeEntry]
    metrics: MetricsModel
    elapsed_ms: float


class SampleRequest(BaseModel):
    circuit: str
    input_spec: str = "basis:0"
    amplitudes: Optional[list[tuple[float, float]]] = None
    mode: Mode = "efficient"
    max_dim: int = NAIVE_MAX_DIM
    trials: int = Field(default=1024, ge=1)
    seed: Optional[int] = None
    aux: dict[str, str] = Field(default_factory=dict)


class SampleResponse(BaseModel):
    register_dims: list[int]
    trials: int
    seed: Optional[int]
    counts: dict[str, int]


class BenchRequest(BaseModel):
    n_min: int = Field(ge=1)
    n_max: int = Field(ge=1)
    mode: Mode = "efficient"
    stages: int = Field(default=2, ge=1)
    max_dim: int = NAIVE_MAX_DIM


class BenchRowModel(BaseModel):
    qubits: int
    mode: Mode
    status: Literal["ok", "crash"]
    elapsed_ms: Optional[float] = None
    peak_live_cells: Optional[int] = None
    madds: Optional[int] = None


class BenchResponse(BaseModel):
    rows: list[BenchRowModel]
    csv: str


class SimonRequest(BaseModel):
    table: str
    trials: int = Field(default=1, ge=1)
    repetitions: Optional[int] = None
    seed: Optional[int] = None


class SimonRunModel(BaseModel):
    classification: str
    recovered_t: Optional[str] = None
    equations: list[str]
    repetitions_used: int


class SimonResponse(BaseModel):
    n: int
    promise: str
    mask: Optional[str]
    trials: int
    successes: int
    success_rate: float
    last_run: SimonRunModel


class FactorRequest(BaseModel):
    n: int
    seed: Optional[int] = None
    max_attempts: int = Field(default=50, ge=1)


class FactorResponse(BaseModel):
    n: int
    factor: int
    cofactor: int


class DlogRequest(BaseModel):
    p: int
    g: int
    x: int
    seed: Optional[int] = None
    max_tries: int = Field(default=50, ge=1)


class DlogResponse(BaseModel):
    p: int
    g: int
    x: int
    r: int
    c: int
    d: int
    third_register: int
    tries: int


class ValidateRequest(BaseModel):
    circuit: str
    aux: dict[str, str] = Field(default_factory=dict)


class ValidateResponse(BaseModel):
    ok: bool
    register_dims: list[int]
    stages: int
    gates: int


class HealthResponse(BaseModel):
    status: str
    version: str
