from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..error.invalid_input_error import InvalidInputError


@dataclass
class PiecewisePath:
    """Ordered points x_0..x_n of a piecewise-linear path, one row per point"""
    points: npt.NDArray[np.float64]
    endpoints_fixed: bool = True

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 2 or self.points.shape[0] < 2:
            raise InvalidInputError(f"A path needs at least two points, got shape {self.points.shape}")

    @property
    def n(self) -> int:
        """Number of segments"""
        return self.points.shape[0] - 1

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def start(self) -> npt.NDArray[np.float64]:
        return self.points[0]

    @property
    def end(self) -> npt.NDArray[np.float64]:
        return self.points[-1]

    def segment_lengths(self) -> npt.NDArray[np.float64]:
        return np.linalg.norm(np.diff(self.points, axis=0), axis=1)

    def reversed(self) -> "PiecewisePath":
        return PiecewisePath(points=self.points[::-1].copy(), endpoints_fixed=self.endpoints_fixed)
