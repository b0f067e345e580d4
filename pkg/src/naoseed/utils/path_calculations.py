from typing import Literal, NamedTuple, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..error.invalid_input_error import InvalidInputError
from ..model.path_diagnostics import PathDiagnostics
from ..model.piecewise_path import PiecewisePath
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed
from .chi_prior import clamped_nll_and_scale, nll_of_norms

# A cap of "auto" follows the path: every segment is capped at the mean segment length of its own path.
Cap = Union[Literal["auto"], float, npt.NDArray[np.float64]]


class SegmentTerms(NamedTuple):
    objective: npt.NDArray[np.float64]
    penalty: npt.NDArray[np.float64]
    grad: npt.NDArray[np.float64]
    lengths: npt.NDArray[np.float64]
    caps: npt.NDArray[np.float64]


def _check_dimension(spec: PriorSpec, points: np.ndarray) -> None:
    if points.shape[-1] != spec.d:
        raise InvalidInputError(f"Dimension mismatch: prior has d={spec.d}, path has d={points.shape[-1]}")


def _row_norms(x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return np.sqrt(np.einsum("...i,...i->...", x, x))


def _is_auto(delta: Cap) -> bool:
    return isinstance(delta, str) and delta == "auto"


def segment_caps(lengths: npt.NDArray[np.float64], delta: Cap) -> npt.NDArray[np.float64]:
    """Cap of every path in a stack of segment lengths (..., n); 'auto' is the mean length of each path."""
    if _is_auto(delta):
        return np.asarray(np.mean(lengths, axis=-1))
    return np.broadcast_to(np.asarray(delta, dtype=np.float64), lengths.shape[:-1])


def segment_terms(spec: PriorSpec, points: npt.NDArray[np.float64], delta: Cap, alpha: float) -> SegmentTerms:
    """
    Riemann-sum objective, segment penalty and their gradient for one or many paths.

    Each segment i contributes W(m_i) * L_i with m_i its midpoint and L_i its length;
    the penalty is alpha * sum_i max(0, L_i - cap). With delta='auto' the cap is the mean
    segment length of the path and the penalty gradient flows through it, so a path can
    bend freely as long as it keeps its points equally spaced. Zero-length segments and
    the ReLU kink take the zero subgradient.

    Args:
        spec: Prior constants
        points: Path points, shape (..., n + 1, d)
        delta: 'auto', a scalar cap or one cap per path (shape (...,))
        alpha: Penalty weight

    Returns:
        SegmentTerms with objective (...,), penalty (...,), gradient shaped like points
        (endpoint rows included), segment lengths (..., n) and caps (...,)
    """
    diffs = np.subtract(points[..., 1:, :], points[..., :-1, :])
    mids = np.add(points[..., 1:, :], points[..., :-1, :])
    mids *= 0.5
    lengths = _row_norms(diffs)
    w, scale = clamped_nll_and_scale(spec, _row_norms(mids))

    caps = segment_caps(lengths, delta)
    active = lengths > caps[..., None]
    objective = np.einsum("...i,...i->...", w, lengths)
    penalty_value = alpha * np.sum(np.where(active, lengths - caps[..., None], 0.0), axis=-1)

    pen_coeff = alpha * active
    if _is_auto(delta):
        pen_coeff = pen_coeff - alpha * np.mean(active, axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        unit_coeff = np.where(lengths > 0, (w + pen_coeff) / lengths, 0.0)

    mids *= (0.5 * scale * lengths)[..., None]
    diffs *= unit_coeff[..., None]

    grad = np.empty_like(points)
    grad[..., 0, :] = 0.0
    grad[..., 1:, :] = mids
    grad[..., :-1, :] += mids
    grad[..., 1:, :] += diffs
    grad[..., :-1, :] -= diffs
    return SegmentTerms(objective, penalty_value, grad, lengths, caps)


def path_terms(spec: PriorSpec, points: npt.NDArray[np.float64], delta: Cap, alpha: float
               ) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """(objective, penalty, gradient) of segment_terms"""
    terms = segment_terms(spec, points, delta, alpha)
    return terms.objective, terms.penalty, terms.grad


def path_objective(spec: PriorSpec, path: PiecewisePath) -> float:
    """
    Discretized line integral sum_i W((x_i + x_{i-1}) / 2) * |x_i - x_{i-1}|, penalty excluded.

    Raises:
        InvalidInputError: If the path dimension differs from the prior's
    """
    _check_dimension(spec, path.points)
    return float(segment_terms(spec, path.points, np.inf, 0.0).objective)


def _check_cap(delta: Cap) -> None:
    if not _is_auto(delta) and not float(delta) > 0:
        raise InvalidInputError(f"Segment cap must be 'auto' or positive, got {delta}")


def penalty(path: PiecewisePath, delta: Cap, alpha: float) -> float:
    """alpha * sum_i max(0, |x_i - x_{i-1}| - cap)"""
    _check_cap(delta)
    if alpha < 0:
        raise InvalidInputError(f"Penalty weight must be >= 0, got alpha={alpha}")
    lengths = path.segment_lengths()
    return float(alpha * np.sum(np.maximum(lengths - segment_caps(lengths, delta), 0.0)))


def path_gradient(spec: PriorSpec, path: PiecewisePath, delta: Cap, alpha: float) -> npt.NDArray[np.float64]:
    """
    Gradient of objective + penalty with respect to every path point.

    Endpoint rows are zero since the endpoints are fixed.
    """
    _check_dimension(spec, path.points)
    grad = segment_terms(spec, path.points, delta, alpha).grad
    grad[0] = 0.0
    grad[-1] = 0.0
    return grad


def max_segment_violation(path: PiecewisePath, delta: Cap) -> float:
    """max_i |x_i - x_{i-1}| - cap (negative when every segment is strictly inside the cap)"""
    _check_cap(delta)
    lengths = path.segment_lengths()
    return float(np.max(lengths) - segment_caps(lengths, delta))


def within_caps(lengths: npt.NDArray[np.float64], caps: npt.NDArray[np.float64], tol: float) -> bool:
    """True when every segment is at most (1 + tol) times its cap."""
    excess = lengths - np.asarray(caps)[..., None]
    return bool(np.all((excess <= 0) | (excess <= tol * np.asarray(caps)[..., None])))


def linear_init(z1: SeedPoint, z2: SeedPoint, n: int) -> PiecewisePath:
    """Equally spaced points x_i = z1 + (i / n)(z2 - z1), endpoints copied exactly."""
    z1 = as_seed(z1)
    z2 = as_seed(z2, z1.size)
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    fractions = np.arange(n + 1, dtype=np.float64) / n
    points = z1[None, :] + fractions[:, None] * (z2 - z1)[None, :]
    points[0] = z1
    points[-1] = z2
    return PiecewisePath(points=points)


def sample_along(path: PiecewisePath, m: int) -> npt.NDArray[np.float64]:
    """
    Points at arc-length fractions k / (m + 1), k = 1..m, endpoints excluded.

    Returns:
        Array (m, d); m copies of x_0 when the path has zero length
    """
    if m < 1:
        raise InvalidInputError(f"m must be >= 1, got {m}")
    lengths = path.segment_lengths()
    total = float(np.sum(lengths))
    if total == 0.0:
        return np.repeat(path.points[:1], m, axis=0)

    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    targets = total * (np.arange(1, m + 1) / (m + 1))
    index = np.clip(np.searchsorted(cumulative, targets, side="right") - 1, 0, path.n - 1)
    fraction = (targets - cumulative[index]) / lengths[index]
    start = path.points[index]
    return start + fraction[:, None] * (path.points[index + 1] - start)


def path_diagnostics(spec: PriorSpec, path: PiecewisePath) -> PathDiagnostics:
    """
    Per-point norms and NLL, segment lengths, the mean NLL over interior points and over
    segment midpoints.

    The midpoint mean is the quantity the objective weights, so it is the one to compare
    across interpolation methods at high dimension, where the optimal vertices sit slightly
    outside the mode shell while the chords between them dip back into it.
    """
    norms = np.linalg.norm(path.points, axis=1)
    point_nll = nll_of_norms(spec, norms)
    interior = point_nll[1:-1] if path.n > 1 else point_nll
    mids = 0.5 * (path.points[1:] + path.points[:-1])
    return PathDiagnostics(
        norms=norms.tolist(),
        nll=point_nll.tolist(),
        segment_lengths=path.segment_lengths().tolist(),
        mean_interior_nll=float(np.mean(interior)),
        mean_midpoint_nll=float(np.mean(nll_of_norms(spec, _row_norms(mids)))),
        objective=path_objective(spec, path),
    )
