import math

import numpy as np
import numpy.typing as npt

from ..error.ambiguous_arc_error import AmbiguousArcError
from ..error.degenerate_direction_error import DegenerateDirectionError
from ..error.degenerate_origin_error import DegenerateOriginError
from ..error.invalid_input_error import InvalidInputError
from ..model.centroid_problem import SphereProjectionResult
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed, as_seed_matrix
from .chi_prior import rescale_to_norm

SIN_PARALLEL_TOL = 1e-7
ANTIPODAL_TOL = 1e-4
# A mean shorter than this fraction of the average seed norm has no usable direction.
DIRECTION_TOL = 1e-10
ARC_CLAMP = 1.0 - 1e-12


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"Interpolation parameter must lie in [0, 1], got {t}")
    return t


def lerp(x: SeedPoint, y: SeedPoint, t: float) -> SeedPoint:
    """Linear interpolation (1 - t) x + t y."""
    x = as_seed(x)
    y = as_seed(y, x.size)
    t = _check_t(t)
    return (1.0 - t) * x + t * y


def slerp(x: SeedPoint, y: SeedPoint, t: float) -> SeedPoint:
    """
    Spherical linear interpolation along the arc between x and y.

    Inputs of different norms use the raw vector formula, so the norm follows the
    sine blend of the two norms.

    Args:
        x: Start seed
        y: End seed
        t: Position on the arc, in [0, 1]

    Returns:
        sin((1 - t) omega) / sin(omega) * x + sin(t omega) / sin(omega) * y

    Raises:
        DegenerateOriginError: If either seed is the zero vector
        AmbiguousArcError: If the seeds are near-antipodal
    """
    x = as_seed(x)
    y = as_seed(y, x.size)
    t = _check_t(t)

    norm_x = float(np.linalg.norm(x))
    norm_y = float(np.linalg.norm(y))
    if norm_x == 0.0 or norm_y == 0.0:
        raise DegenerateOriginError("SLERP is undefined for a zero-norm seed")

    cos_omega = float(np.clip(np.dot(x, y) / (norm_x * norm_y), -1.0, 1.0))
    omega = math.acos(cos_omega)
    if omega > math.pi - ANTIPODAL_TOL:
        raise AmbiguousArcError(f"Seeds are near-antipodal (angle {omega:.6f} rad); the arc is ambiguous")

    sin_omega = math.sin(omega)
    if sin_omega <= SIN_PARALLEL_TOL:
        return lerp(x, y, t)

    return (math.sin((1.0 - t) * omega) / sin_omega) * x + (math.sin(t * omega) / sin_omega) * y


def euclidean_centroid(seeds) -> SeedPoint:
    """
    Component-wise mean of the seeds (rows).

    Rows are summed in lexicographic order, so permuting the seeds gives a bit-identical mean.
    """
    try:
        seeds = as_seed_matrix(seeds)
    except InvalidInputError as e:
        raise InvalidInputError(f"Cannot average an empty or malformed seed set: {e}") from e
    return np.mean(_lexicographic(seeds), axis=0)


def _lexicographic(seeds: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return seeds[np.lexsort(seeds.T[::-1])]


def _mean_direction(seeds: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    mean = np.mean(seeds, axis=0)
    norm = float(np.linalg.norm(mean))
    scale = float(np.mean(np.linalg.norm(seeds, axis=1)))
    if norm <= DIRECTION_TOL * max(scale, 1.0):
        raise DegenerateDirectionError(f"Mean of the seeds is too close to the origin (norm {norm:.3e})")
    return mean / norm


def normalized_euclidean_centroid(spec: PriorSpec, seeds) -> SeedPoint:
    """Euclidean mean projected onto the mode sphere of radius sqrt(d - 1)."""
    seeds = _lexicographic(as_seed_matrix(seeds, spec.d))
    return rescale_to_norm(_mean_direction(seeds), spec.mode_radius)


def sphere_projection_centroid(spec: PriorSpec, seeds, tol: float = 1e-12,
                               max_iter: int = 1000) -> SphereProjectionResult:
    """
    Minimizer of the summed arc lengths to the seeds, found on the unit sphere and
    scaled to the mode radius.

    The seeds are normalized and the iterate u <- normalize(sum_i u_i / sqrt(1 - (u . u_i)^2))
    runs from the normalized Euclidean mean until the step is below tol. The squared
    cosine is clamped below 1 so a seed parallel to the iterate keeps a finite weight.

    Raises:
        DegenerateOriginError: If a seed is the zero vector
        DegenerateDirectionError: If the mean (or an iterate) has no direction
    """
    seeds = _lexicographic(as_seed_matrix(seeds, spec.d))
    norms = np.linalg.norm(seeds, axis=1)
    if np.any(norms == 0.0):
        raise DegenerateOriginError("Sphere projection needs every seed away from the origin")
    units = seeds / norms[:, None]

    u = _mean_direction(seeds)
    trace = [_arc_length_sum(u, units)]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        cos_sq = np.clip(np.dot(units, u) ** 2, 0.0, ARC_CLAMP)
        v = np.sum(units / np.sqrt(1.0 - cos_sq)[:, None], axis=0)
        v_norm = float(np.linalg.norm(v))
        if v_norm == 0.0:
            raise DegenerateDirectionError("Spherical iterate collapsed to the origin")
        u_new = v / v_norm
        step = float(np.linalg.norm(u_new - u))
        u = u_new
        trace.append(_arc_length_sum(u, units))
        if step <= tol:
            converged = True
            break

    return SphereProjectionResult(
        centroid=spec.mode_radius * u,
        iterations=iterations,
        converged=converged,
        arc_length_trace=trace,
    )


def _arc_length_sum(u: npt.NDArray[np.float64], units: npt.NDArray[np.float64]) -> float:
    return float(np.sum(np.arccos(np.clip(np.dot(units, u), -1.0, 1.0))))
