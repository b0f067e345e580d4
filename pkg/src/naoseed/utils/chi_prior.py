import math
from typing import Iterable, Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import gammaln

from ..error.degenerate_origin_error import DegenerateOriginError
from ..error.invalid_input_error import InvalidInputError
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed
from .rng import RngState

# Norm floor used inside objective evaluation; W(max(r, NORM_CLAMP)) keeps gradients finite.
NORM_CLAMP = 1e-8


def log_pdf(spec: PriorSpec, r: float) -> float:
    """
    Log density of the chi distribution with spec.d degrees of freedom.

    Args:
        spec: Prior constants
        r: Radius (seed norm), must be finite and >= 0

    Returns:
        (d - 1) ln r - r^2 / 2 - log_normalizer, or -inf at r = 0

    Raises:
        InvalidInputError: If r is negative or not finite
    """
    r = float(r)
    if not math.isfinite(r) or r < 0:
        raise InvalidInputError(f"Radius must be finite and non-negative, got {r}")
    if r == 0.0:
        return -math.inf
    return (spec.d - 1) * math.log(r) - 0.5 * r * r - spec.log_normalizer


def nll_of_norms(spec: PriorSpec, r: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Vectorized W(r) = -log_pdf(r); zero radii map to +inf."""
    r = np.asarray(r, dtype=np.float64)
    with np.errstate(divide="ignore"):
        log_r = np.log(r)
    return 0.5 * r * r - (spec.d - 1) * log_r + spec.log_normalizer


def nll(spec: PriorSpec, z: SeedPoint) -> float:
    """
    Path weight W(z): negative log-likelihood of the seed norm.

    Returns +inf for the zero vector; callers that need finite values clamp the norm.
    """
    z = as_seed(z, spec.d)
    return float(nll_of_norms(spec, np.linalg.norm(z)))


def nll_gradient(spec: PriorSpec, z: SeedPoint) -> SeedPoint:
    """
    Gradient of W at z: (1 - (d - 1) / |z|^2) z.

    Raises:
        DegenerateOriginError: If z is the zero vector
    """
    z = as_seed(z, spec.d)
    r2 = float(np.dot(z, z))
    if r2 == 0.0:
        raise DegenerateOriginError("The prior gradient is undefined at the origin")
    return (1.0 - (spec.d - 1) / r2) * z


def clamped_nll_and_gradient(spec: PriorSpec, points: npt.NDArray[np.float64]
                             ) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    W and its gradient for a stack of points (..., d), with norms clamped at NORM_CLAMP.

    Inside the clamp radius W is constant, so the gradient there is zero.
    """
    points = np.asarray(points, dtype=np.float64)
    w, scale = clamped_nll_and_scale(spec, np.linalg.norm(points, axis=-1))
    return w, scale[..., None] * points


def clamped_nll_and_scale(spec: PriorSpec, r: npt.NDArray[np.float64]
                          ) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    W and the radial factor s(r) = 1 - (d - 1) / r^2 with grad W(x) = s(|x|) x, from norms alone.

    Norms are clamped at NORM_CLAMP; s is zero inside the clamp radius.
    """
    clamped = np.maximum(r, NORM_CLAMP)
    w = nll_of_norms(spec, clamped)
    scale = np.where(r > NORM_CLAMP, 1.0 - (spec.d - 1) / (clamped * clamped), 0.0)
    return w, scale


def sample_seed(spec: PriorSpec, rng: RngState) -> SeedPoint:
    """Draw z ~ N(0, I_d) from the reproducible Gaussian stream."""
    return rng.gaussian_stream(spec.d)


def rescale_to_norm(z: SeedPoint, target: float) -> SeedPoint:
    """
    Move z along its own ray to the given norm.

    Raises:
        DegenerateOriginError: If z is the zero vector
        InvalidInputError: If target is not a positive finite number
    """
    z = as_seed(z)
    if not (math.isfinite(target) and target > 0):
        raise InvalidInputError(f"Target norm must be positive, got {target}")
    norm = float(np.linalg.norm(z))
    if norm == 0.0:
        raise DegenerateOriginError("Cannot rescale the zero vector")
    if norm == target:
        return z.copy()
    return z * (target / norm)


def norm_statistics(spec: PriorSpec) -> Tuple[float, float]:
    """
    Mean and variance of |z| for z ~ N(0, I_d).

    The mean sqrt(2) Gamma((d+1)/2) / Gamma(d/2) is formed from log-Gamma differences.
    """
    mean = math.sqrt(2.0) * math.exp(float(gammaln((spec.d + 1) / 2.0) - gammaln(spec.d / 2.0)))
    return mean, max(spec.d - mean * mean, 0.0)


def norm_sweep(spec: PriorSpec, z: SeedPoint, norms: Iterable[float]
               ) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Rescale one seed to each of the given norms, keeping its direction.

    Returns:
        (seeds, nll) with one row / entry per requested norm
    """
    seeds = np.stack([rescale_to_norm(z, float(target)) for target in norms])
    return seeds, nll_of_norms(spec, np.linalg.norm(seeds, axis=1))


def log_pdf_grid(spec: PriorSpec, low: float, high: float, resolution: int) -> npt.NDArray[np.float64]:
    """
    log_pdf of |(x, y)| at the cell centers of a resolution x resolution grid over [low, high]^2.

    Row i holds x = center_i, column j holds y = center_j, so the grid is symmetric
    under x <-> y.
    """
    if spec.d != 2:
        raise InvalidInputError(f"The contour grid is defined for d = 2, got d = {spec.d}")
    if resolution < 1 or not high > low:
        raise InvalidInputError(f"Invalid grid: resolution={resolution}, range=[{low}, {high}]")
    centers = low + (np.arange(resolution) + 0.5) * ((high - low) / resolution)
    radius = np.sqrt(centers[:, None] ** 2 + centers[None, :] ** 2)
    return -nll_of_norms(spec, radius)
