from typing import List, Literal, Union

from pydantic import BaseModel, ConfigDict

from .path_config import PathConfig


class DeltaSweepEntry(BaseModel):
    """Outcome of one optimizer run at a fixed segment cap"""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    delta: Union[Literal["auto"], float]
    resolved_delta: float
    final_objective: float
    final_penalty: float
    max_segment_violation: float
    mean_interior_nll: float
    max_interior_nll: float
    iterations_used: int
    converged: bool


class DeltaSweepReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    dim: int
    n: int
    entries: List[DeltaSweepEntry]
    config: PathConfig
    timing_seconds: float = 0.0
