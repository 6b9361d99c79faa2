"""Request and response bodies for the benchmark service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class DatasetIn(BaseModel):
    path: str
    kind: str
    id: str | None = None


class DatasetOut(BaseModel):
    id: str
    path: str
    checksum: str
    kind: str


class RunIn(BaseModel):
    dataset: str
    model: str
    seed: int = 0


class RunOut(BaseModel):
    dataset: str
    model: str
    seed: int
    model_bits: int
    payload_bits: int
    total_bits: int
    verified: bool
    wall_time: float
    version: str
    first_mismatch_offset: int | None = None


class LeaderboardOut(BaseModel):
    dataset: str
    rows: list[RunOut]


class SampleIn(BaseModel):
    model: str
    count: int = Field(ge=0)
    seed: int = 0


class SampleOut(BaseModel):
    model: str
    count: int
    seed: int
    text: str


class ModelOut(BaseModel):
    model_id: str
    kind: str
    sampleable: bool


class ReportOut(BaseModel):
    version: str
    datasets: list[DatasetOut]
    results: list[RunOut]


class ValueOut(BaseModel):
    quantity: str
    value: float
    unit: str


class EntropyOut(BaseModel):
    rate: float
    nats: float
    bits: float


class KlOut(BaseModel):
    p_rate: float
    q_rate: float
    cross_entropy_nats: float
    cross_entropy_bits: float
    kl_nats: float
    kl_bits: float


class ClassSpecIn(BaseModel):
    """Hypothesis class size, given exactly or in log space."""

    size: int | None = Field(default=None, ge=1)
    ln_size: float | None = Field(default=None, ge=0.0)


class RequiredSamplesIn(BaseModel):
    epsilon: float
    delta: float
    hypothesis_class: ClassSpecIn


class MaxClassSizeIn(BaseModel):
    n: int
    epsilon: float
    delta: float


class RuleClassSizeIn(BaseModel):
    thresholds: int = Field(alias="k")
    indicators: int = Field(alias="e")
    slots: int = Field(alias="d")
    model_config = {"populate_by_name": True}


class HiddenWormIn(BaseModel):
    hypothesis_class: ClassSpecIn
    epsilon: float
    n: int
    trials: int | None = Field(default=None, ge=1)
    seed: int = 0


class HiddenWormOut(BaseModel):
    analytic: ValueOut
    empirical_frequency: float | None = None
    trials: int | None = None
    seed: int | None = None


class CompressionBoundIn(BaseModel):
    bits_per_sample: float
    n: int
    delta: float
