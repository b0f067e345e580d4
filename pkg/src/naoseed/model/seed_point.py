from typing import Optional

import numpy as np
import numpy.typing as npt

from ..error.invalid_input_error import InvalidInputError

# A seed z_T is a plain float64 vector of length d.
SeedPoint = npt.NDArray[np.float64]


def as_seed(values, d: Optional[int] = None) -> SeedPoint:
    """
    Validate and convert a vector-like into a seed.

    Args:
        values: Sequence or array of reals
        d: Expected dimension, if known

    Returns:
        1-D float64 array

    Raises:
        InvalidInputError: If the input is not 1-D, has the wrong length or holds NaN/Inf
    """
    seed = np.asarray(values, dtype=np.float64)
    if seed.ndim != 1 or seed.size == 0:
        raise InvalidInputError(f"A seed must be a non-empty 1-D vector, got shape {seed.shape}")
    if d is not None and seed.size != d:
        raise InvalidInputError(f"Dimension mismatch: expected {d}, got {seed.size}")
    if not np.all(np.isfinite(seed)):
        raise InvalidInputError("Seed components must be finite")
    return seed


def as_seed_matrix(values, d: Optional[int] = None) -> npt.NDArray[np.float64]:
    """Validate a stack of seeds (k, d); k must be at least one."""
    seeds = np.asarray(values, dtype=np.float64)
    if seeds.ndim != 2 or seeds.shape[0] == 0 or seeds.shape[1] == 0:
        raise InvalidInputError(f"Expected a non-empty (k, d) seed matrix, got shape {seeds.shape}")
    if d is not None and seeds.shape[1] != d:
        raise InvalidInputError(f"Dimension mismatch: expected {d}, got {seeds.shape[1]}")
    if not np.all(np.isfinite(seeds)):
        raise InvalidInputError("Seed components must be finite")
    return seeds
