from typing import List

from pydantic import BaseModel, ConfigDict

from .path_config import PathConfig


class AuditTrial(BaseModel):
    """Distance estimates for one sampled triple (x, y, z)"""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    f_xx: float
    f_xy: float
    f_yx: float
    f_yz: float
    f_xz: float
    symmetry_rel: float
    triangle_slack: float
    concatenated_objective: float
    reoptimized_objective: float


class MetricAuditReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    dim: int
    trials: int
    rng_seed: int
    identity_max_abs: float
    symmetry_max_rel: float
    symmetry_violations: int
    triangle_violations: int
    triangle_worst_slack: float
    concatenation_failures: int
    concatenation_worst_gap: float
    symmetry_tolerance: float
    triangle_tolerance: float
    config: PathConfig
    trial_details: List[AuditTrial]
