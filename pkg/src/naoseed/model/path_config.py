from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat

from .piecewise_path import PiecewisePath


class DescentConfig(BaseModel):
    """Penalty weight, Adam settings and stopping rule shared by the path and centroid optimizers"""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    alpha: float = Field(10.0, gt=0, description="Weight of the ReLU segment penalty")
    step_size: float = Field(1e-2, gt=0, description="Adam step size at the first iteration")
    step_floor: float = Field(1e-3, gt=0, le=1,
                              description="Step size reached at the last iteration, as a fraction of step_size")
    max_iters: int = Field(2000, ge=1)
    grad_tol: float = Field(1e-6, gt=0, description="Stationary when the gradient infinity-norm drops below this")
    stall_window: int = Field(100, ge=1, description="Iterations over which the best merit must keep improving")
    stall_tol: float = Field(1e-8, ge=0, description="Relative merit improvement over stall_window that counts as stalled")
    feasibility_tol: float = Field(1e-3, ge=0, description="Allowed segment violation as a fraction of the cap")
    adam_beta1: float = Field(0.9, ge=0, lt=1)
    adam_beta2: float = Field(0.999, ge=0, lt=1)
    adam_eps: float = Field(1e-8, gt=0)
    log_every: int = Field(200, ge=1, description="Iterations between debug log lines")


class PathConfig(DescentConfig):
    """Hyperparameters of the interpolation-path optimizer"""

    n: int = Field(10, ge=1, description="Number of path segments")
    delta: Union[Literal["auto"], PositiveFloat] = Field(
        "auto", description="Segment length cap; 'auto' caps every segment at the mean segment length")

    def resolve_delta(self, path: PiecewisePath) -> float:
        """
        Cap in force for the given path.

        'auto' follows the path: it is the mean segment length, which is |z1 - z2| / n on the
        straight starting path.
        """
        if self.delta == "auto":
            return float(np.mean(path.segment_lengths()))
        return float(self.delta)
