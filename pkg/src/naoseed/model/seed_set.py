from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt

from ..error.invalid_input_error import InvalidInputError


@dataclass
class SeedSet:
    """Container of seeds sharing one dimension, stored row-major (count, d)"""
    seeds: npt.NDArray[np.float64]
    dtype: Literal["f64", "f32"] = "f64"

    def __post_init__(self):
        self.seeds = np.asarray(self.seeds, dtype=np.float64)
        if self.seeds.ndim != 2 or self.seeds.shape[0] < 1 or self.seeds.shape[1] < 1:
            raise InvalidInputError(f"A seed set needs shape (count >= 1, d >= 1), got {self.seeds.shape}")
        if self.dtype not in ("f64", "f32"):
            raise InvalidInputError(f"Unknown dtype tag {self.dtype!r}")

    @property
    def d(self) -> int:
        return self.seeds.shape[1]

    @property
    def count(self) -> int:
        return self.seeds.shape[0]
