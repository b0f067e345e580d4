from typing import List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GridSpec(BaseModel):
    """2D lattice for the shortest-path oracle; resolution counts cells per axis"""
    min_corner: Tuple[float, float] = (-2.0, -2.0)
    max_corner: Tuple[float, float] = (2.0, 2.0)
    resolution: int = Field(512, ge=32)
    stencil: Literal[8, 16] = 16

    @model_validator(mode="after")
    def check_corners(self) -> "GridSpec":
        if not (self.max_corner[0] > self.min_corner[0] and self.max_corner[1] > self.min_corner[1]):
            raise ValueError("max_corner must strictly dominate min_corner")
        return self


class OracleResult(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    cost: float
    polyline: List[Tuple[float, float]]
    snapped_a: Tuple[float, float]
    snapped_b: Tuple[float, float]
    snap_error: float  # larger of the two endpoint snapping distances
    cell_diagonal: float
    grid: GridSpec
