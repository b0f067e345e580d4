from typing import List

from pydantic import BaseModel, ConfigDict


class PathDiagnostics(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    norms: List[float]
    nll: List[float]
    segment_lengths: List[float]
    mean_interior_nll: float
    mean_midpoint_nll: float
    objective: float
