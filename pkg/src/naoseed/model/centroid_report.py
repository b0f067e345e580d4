from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .centroid_problem import CentroidConfig
from .optim_report import OptimReport

CentroidMethod = Literal["euclidean", "norm-euclidean", "sphere", "nao"]


class CentroidReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    method: CentroidMethod
    dim: int
    k: int
    centroid_norm: float
    mode_radius: float
    warnings: List[str] = Field(default_factory=list)
    joint_objective: Optional[float] = None
    optim: Optional[OptimReport] = None
    start: Optional[str] = Field(None, description="Baseline centroid the nao descent started from")
    sphere_iterations: Optional[int] = None
    sphere_converged: Optional[bool] = None
    comparison: Dict[str, float] = Field(
        default_factory=dict, description="Joint objective at each method's centroid with re-optimized paths")
    samples: int = 0
    config: CentroidConfig
    timing_seconds: float = 0.0
