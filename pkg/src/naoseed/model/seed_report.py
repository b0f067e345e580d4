from typing import List, Literal

from pydantic import BaseModel, ConfigDict


class SampleReport(BaseModel):
    """Observed seed norms next to the exact chi norm statistics"""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    dim: int
    count: int
    rng_seed: int
    algorithm: str
    dtype: Literal["f64", "f32"]
    norms: List[float]
    expected_norm_mean: float
    expected_norm_std: float
    mode_radius: float
    timing_seconds: float = 0.0


class NormSweepReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    dim: int
    index: int
    source_norm: float
    norms: List[float]
    nll: List[float]
    mode_radius: float
    timing_seconds: float = 0.0
