from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

from .optim_report import OptimReport
from .path_config import PathConfig
from .path_diagnostics import PathDiagnostics


class InterpolationReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    method: Literal["lerp", "slerp", "nao"]
    dim: int
    n: int
    objective: float
    samples: int
    diagnostics: PathDiagnostics
    optim: Optional[OptimReport] = None
    config: PathConfig
    timing_seconds: float = 0.0


class DistanceReport(BaseModel):
    """Estimated induced distance between the two seeds of a file"""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    dim: int
    distance: float
    optim: OptimReport
    config: PathConfig
    timing_seconds: float = 0.0
