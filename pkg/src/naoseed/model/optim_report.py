from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict

StopReason = Literal["stationary", "stalled", "max_iters", "no_free_points"]


class OptimReport(BaseModel):
    """
    Trace of one optimizer run.

    objective_trace and penalty_trace follow the incumbent (the best iterate by objective +
    penalty), so their sum never increases and final_objective is the last objective entry.
    The iterate_* traces record every Adam iterate as it was produced.
    """
    model_config = ConfigDict(ser_json_inf_nan="constants")

    objective_trace: List[float]
    penalty_trace: List[float]
    iterate_objective_trace: List[float]
    iterate_penalty_trace: List[float]
    initial_objective: float
    final_objective: float
    final_penalty: float
    max_segment_violation: float
    deltas: List[float]
    iterations_used: int
    converged: bool
    stop_reason: StopReason
    final_grad_inf_norm: Optional[float] = None
