import logging
from typing import List, Literal, Optional, Tuple, Union

import numpy as np

from ..error.degenerate_origin_error import DegenerateOriginError
from ..error.invalid_input_error import InvalidInputError
from ..model.delta_sweep_report import DeltaSweepEntry
from ..model.optim_report import OptimReport
from ..model.path_config import PathConfig
from ..model.piecewise_path import PiecewisePath
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed
from ..utils.baselines import slerp
from ..utils.descent import Evaluation, descend
from ..utils.path_calculations import linear_init, max_segment_violation, path_diagnostics, segment_terms, within_caps

logger = logging.getLogger(__name__)

InterpolationMethod = Literal["lerp", "slerp", "nao"]


class PathService:
    def __init__(self, spec: PriorSpec):
        self.spec = spec

    def optimize_path(self, z1: SeedPoint, z2: SeedPoint, cfg: PathConfig,
                      init_path: Optional[PiecewisePath] = None) -> Tuple[PiecewisePath, OptimReport]:
        """
        Minimize the discretized line integral plus the segment penalty over the interior points.

        The endpoints are never touched. Each Adam step produces a candidate; it replaces the
        incumbent only if it lowers objective + penalty without raising the objective, so the
        reported merit trace never increases and the result is never worse than the starting path.
        The run is converged once the returned path keeps every segment within
        (1 + feasibility_tol) times its cap and is stationary or has stalled.

        Args:
            z1: Start seed
            z2: End seed
            cfg: Optimizer settings
            init_path: Optional warm start; its endpoints must equal z1 and z2 and its segment
                count replaces cfg.n

        Returns:
            (incumbent path, report)

        Raises:
            DegenerateOriginError: If an endpoint is the zero vector or the starting objective is not finite
            InvalidInputError: On dimension mismatch or a warm start with other endpoints
        """
        try:
            z1 = as_seed(z1, self.spec.d)
            z2 = as_seed(z2, self.spec.d)
            n = init_path.n if init_path is not None else cfg.n

            if np.array_equal(z1, z2):
                logger.info("Identical endpoints, returning the constant path")
                return self._trivial_path(z1, n, cfg)

            if np.linalg.norm(z1) == 0.0 or np.linalg.norm(z2) == 0.0:
                raise DegenerateOriginError("Path endpoints must be away from the origin")

            points = self._starting_points(z1, z2, n, init_path)
            return self._descend(points, cfg)
        except Exception as e:
            logger.error(f"Path optimization failed: {e}")
            raise

    def _trivial_path(self, z: SeedPoint, n: int, cfg: PathConfig) -> Tuple[PiecewisePath, OptimReport]:
        path = linear_init(z, z, n)
        report = OptimReport(
            objective_trace=[0.0],
            penalty_trace=[0.0],
            iterate_objective_trace=[0.0],
            iterate_penalty_trace=[0.0],
            initial_objective=0.0,
            final_objective=0.0,
            final_penalty=0.0,
            max_segment_violation=max_segment_violation(path, cfg.delta),
            deltas=[cfg.resolve_delta(path)],
            iterations_used=0,
            converged=True,
            stop_reason="stationary",
            final_grad_inf_norm=0.0,
        )
        return path, report

    def _starting_points(self, z1: SeedPoint, z2: SeedPoint, n: int,
                         init_path: Optional[PiecewisePath]) -> np.ndarray:
        if init_path is None:
            return linear_init(z1, z2, n).points

        if init_path.d != self.spec.d:
            raise InvalidInputError(f"Warm start has d={init_path.d}, prior has d={self.spec.d}")
        if not (np.array_equal(init_path.start, z1) and np.array_equal(init_path.end, z2)):
            raise InvalidInputError("Warm start endpoints differ from the requested endpoints")
        points = init_path.points.copy()
        points[0] = z1
        points[-1] = z2
        return points

    def _descend(self, points: np.ndarray, cfg: PathConfig) -> Tuple[PiecewisePath, OptimReport]:
        n = points.shape[0] - 1
        logger.info(f"Optimizing path: d={self.spec.d}, n={n}, delta={cfg.delta}")

        def evaluate() -> Evaluation:
            terms = segment_terms(self.spec, points, cfg.delta, cfg.alpha)
            return Evaluation(float(terms.objective), float(terms.penalty), {"interior": terms.grad[1:-1]},
                              within_caps(terms.lengths, terms.caps, cfg.feasibility_tol))

        outcome = descend({"interior": points[1:-1]}, evaluate, cfg, label="path")
        path = PiecewisePath(points=points)
        logger.info(f"Path optimization finished after {outcome.iterations_used} iterations "
                    f"({outcome.stop_reason}): objective={outcome.final_objective:.6g}, "
                    f"penalty={outcome.final_penalty:.3g}, converged={outcome.converged}")

        report = OptimReport(
            objective_trace=outcome.objective_trace,
            penalty_trace=outcome.penalty_trace,
            iterate_objective_trace=outcome.iterate_objective_trace,
            iterate_penalty_trace=outcome.iterate_penalty_trace,
            initial_objective=outcome.initial_objective,
            final_objective=outcome.final_objective,
            final_penalty=outcome.final_penalty,
            max_segment_violation=max_segment_violation(path, cfg.delta),
            deltas=[cfg.resolve_delta(path)],
            iterations_used=outcome.iterations_used,
            converged=outcome.converged,
            stop_reason=outcome.stop_reason,
            final_grad_inf_norm=outcome.final_grad_inf_norm,
        )
        return path, report

    def interpolate(self, method: InterpolationMethod, z1: SeedPoint, z2: SeedPoint,
                    cfg: PathConfig) -> Tuple[PiecewisePath, Optional[OptimReport]]:
        """Build an n-segment path with the given method; only 'nao' produces an optimizer report"""
        z1 = as_seed(z1, self.spec.d)
        z2 = as_seed(z2, self.spec.d)

        if method == "lerp":
            return linear_init(z1, z2, cfg.n), None
        if method == "slerp":
            points = np.stack([slerp(z1, z2, i / cfg.n) for i in range(cfg.n + 1)])
            points[0] = z1
            points[-1] = z2
            return PiecewisePath(points=points), None
        if method == "nao":
            return self.optimize_path(z1, z2, cfg)

        raise InvalidInputError(f"Unknown interpolation method {method!r}")

    def delta_sweep(self, z1: SeedPoint, z2: SeedPoint, cfg: PathConfig,
                    deltas: List[Union[Literal["auto"], float]]) -> List[DeltaSweepEntry]:
        """
        Optimize the same endpoints once per segment cap.

        'auto' is always part of the sweep (placed first when missing); an infinite cap
        disables the penalty.
        """
        sweep: List[Union[str, float]] = list(deltas)
        if "auto" not in sweep:
            sweep.insert(0, "auto")

        entries = []
        for value in sweep:
            run_cfg = PathConfig(**{**cfg.model_dump(), "delta": value})
            path, report = self.optimize_path(z1, z2, run_cfg)
            diagnostics = path_diagnostics(self.spec, path)
            interior = diagnostics.nll[1:-1] or diagnostics.nll
            entries.append(DeltaSweepEntry(
                delta=str(value) if value == "auto" else float(value),
                resolved_delta=report.deltas[0],
                final_objective=report.final_objective,
                final_penalty=report.final_penalty,
                max_segment_violation=report.max_segment_violation,
                mean_interior_nll=diagnostics.mean_interior_nll,
                max_interior_nll=float(max(interior)),
                iterations_used=report.iterations_used,
                converged=report.converged,
            ))
            logger.info(f"delta={value}: objective={report.final_objective:.6g}, "
                        f"violation={report.max_segment_violation:.3g}")
        return entries
