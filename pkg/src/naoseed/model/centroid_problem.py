from dataclasses import dataclass
from typing import List, Literal, Union

import numpy as np
import numpy.typing as npt
from pydantic import Field, PositiveFloat

from .optim_report import OptimReport
from .path_config import DescentConfig
from .piecewise_path import PiecewisePath


class CentroidConfig(DescentConfig):
    """Hyperparameters of the joint centroid/path optimizer"""

    per_path_n: int = Field(10, ge=1)
    delta: Union[Literal["auto"], List[PositiveFloat]] = Field(
        "auto", description="Per-path caps; 'auto' caps every segment of a path at that path's mean segment length")
    include_centroid_prior: bool = Field(True, description="Keep the -log P(c) term of the discretized objective")


@dataclass
class CentroidProblem:
    """Seeds z^1..z^k, one per row, and the optimizer settings"""
    seeds: npt.NDArray[np.float64]
    config: CentroidConfig


@dataclass
class CentroidResult:
    """
    Optimized centroid c* and its k paths; path l runs from c* to seed l.

    start names the candidate centroid the joint descent started from.
    """
    centroid: npt.NDArray[np.float64]
    paths: List[PiecewisePath]
    report: OptimReport
    start: str = "euclidean"


@dataclass
class SphereProjectionResult:
    """Outcome of the spherical fixed-point iteration"""
    centroid: npt.NDArray[np.float64]
    iterations: int
    converged: bool
    arc_length_trace: List[float]
