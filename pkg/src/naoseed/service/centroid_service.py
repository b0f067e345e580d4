import logging
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..error.degenerate_origin_error import DegenerateOriginError
from ..error.invalid_input_error import InvalidInputError
from ..model.centroid_problem import CentroidConfig, CentroidProblem, CentroidResult
from ..model.optim_report import OptimReport
from ..model.piecewise_path import PiecewisePath
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed, as_seed_matrix
from ..utils.baselines import euclidean_centroid, normalized_euclidean_centroid, sphere_projection_centroid
from ..utils.chi_prior import clamped_nll_and_gradient, clamped_nll_and_scale, rescale_to_norm
from ..utils.descent import DescentOutcome, Evaluation, descend
from ..utils.path_calculations import linear_init, path_objective, sample_along, segment_caps, segment_terms, within_caps
from .path_service import PathService

logger = logging.getLogger(__name__)

# Euclidean means shorter than this fraction of the mode radius are moved onto the mode sphere.
NEAR_ORIGIN_FRACTION = 1e-3

Caps = Union[str, npt.NDArray[np.float64]]


class _Fan:
    """A centroid and the k paths from it to the (lexicographically ordered) seeds, as one array"""

    def __init__(self, c: npt.NDArray[np.float64], ordered: npt.NDArray[np.float64], n: int):
        self.c = np.array(c, dtype=np.float64)
        self.points = np.stack([linear_init(self.c, seed, n).points for seed in ordered])

    def anchor(self) -> None:
        self.points[:, 0, :] = self.c


class CentroidService:
    def __init__(self, spec: PriorSpec, path_service: PathService):
        self.spec = spec
        self.path_service = path_service

    def centroid_objective(self, c: SeedPoint, paths: Sequence[PiecewisePath],
                           include_centroid_prior: bool = True) -> float:
        """
        W(c) + sum_l path_objective(path_l), penalties excluded.

        Raises:
            InvalidInputError: If a path does not start exactly at c
        """
        c = as_seed(c, self.spec.d)
        for index, path in enumerate(paths):
            if not np.array_equal(path.start, c):
                raise InvalidInputError(f"Path {index} is not anchored at the centroid")

        total = float(clamped_nll_and_gradient(self.spec, c)[0]) if include_centroid_prior else 0.0
        for path in paths:
            total += path_objective(self.spec, path)
        return total

    def optimize_centroid(self, problem: CentroidProblem) -> CentroidResult:
        """
        Jointly optimize the centroid and the k paths joining it to the seeds.

        Every baseline centroid that exists for the seeds (the Euclidean mean, moved onto
        the mode sphere when it is near the origin, the normalized mean and the sphere
        projection) is scored by optimizing its k paths with the centroid held fixed. The
        joint descent starts from the candidate with the lowest objective and never returns
        anything worse, so the result is at least as good as every baseline it scored.

        Seeds are processed in lexicographic order so the result does not depend on the
        order they were given in; paths and per-path caps come back in input order.

        Raises:
            InvalidInputError: On an empty seed set, a dimension mismatch or a cap list of the wrong length
            DegenerateOriginError: If every seed is the zero vector or the starting objective is not finite
        """
        try:
            cfg = problem.config
            seeds = as_seed_matrix(problem.seeds, self.spec.d)
            k = seeds.shape[0]
            order = np.lexsort(seeds.T[::-1])
            ordered = seeds[order]
            caps = self._ordered_caps(cfg, order)
            logger.info(f"Optimizing centroid: d={self.spec.d}, k={k}, n={cfg.per_path_n}")

            start, fan, scored = None, None, None
            for name, c in self._candidates(ordered):
                candidate = _Fan(c, ordered, cfg.per_path_n)
                outcome = self._descend(candidate, caps, cfg, move_centroid=False)
                logger.info(f"{name} start: objective={outcome.final_objective:.6g}, norm={np.linalg.norm(c):.6g}")
                if scored is None or outcome.final_objective < scored.final_objective:
                    start, fan, scored = name, candidate, outcome

            outcome = self._descend(fan, caps, cfg, move_centroid=True)
            report = self._report(fan, caps, outcome)
            inverse = np.argsort(order)
            paths = [PiecewisePath(points=fan.points[position].copy()) for position in inverse]
            report.deltas = [report.deltas[position] for position in inverse]
            logger.info(f"Centroid optimization from the {start} start finished: "
                        f"objective={report.final_objective:.6g}, norm={np.linalg.norm(fan.c):.6g}, "
                        f"converged={report.converged} ({report.stop_reason})")
            return CentroidResult(centroid=fan.c.copy(), paths=paths, report=report, start=start)
        except Exception as e:
            logger.error(f"Centroid optimization failed: {e}")
            raise

    def _candidates(self, ordered: npt.NDArray[np.float64]) -> List[Tuple[str, npt.NDArray[np.float64]]]:
        builders: List[Tuple[str, Callable[[], npt.NDArray[np.float64]]]] = [
            ("euclidean", lambda: self._initial_centroid(ordered)),
            ("norm-euclidean", lambda: normalized_euclidean_centroid(self.spec, ordered)),
            ("sphere", lambda: sphere_projection_centroid(self.spec, ordered).centroid),
        ]
        candidates = []
        for name, build in builders:
            try:
                candidates.append((name, build()))
            except (ArithmeticError, InvalidInputError) as e:
                if name == "euclidean":
                    raise
                logger.info(f"No {name} start: {e}")
        return candidates

    def _initial_centroid(self, ordered: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        c = euclidean_centroid(ordered)
        if np.linalg.norm(c) >= NEAR_ORIGIN_FRACTION * self.spec.mode_radius:
            return c

        nonzero = [seed for seed in ordered if np.any(seed != 0.0)]
        if not nonzero:
            raise DegenerateOriginError("Every seed is the zero vector")
        logger.warning("Euclidean mean is near the origin, starting on the mode sphere instead")
        return rescale_to_norm(nonzero[0], self.spec.mode_radius)

    @staticmethod
    def _ordered_caps(cfg: CentroidConfig, order: npt.NDArray[np.intp]) -> Caps:
        if cfg.delta == "auto":
            return "auto"
        if len(cfg.delta) != order.size:
            raise InvalidInputError(f"Expected {order.size} segment caps, got {len(cfg.delta)}")
        return np.asarray(cfg.delta, dtype=np.float64)[order]

    def _descend(self, fan: _Fan, caps: Caps, cfg: CentroidConfig, move_centroid: bool) -> DescentOutcome:
        """Descent on the k paths of a fan; the centroid moves only when move_centroid is set."""

        def evaluate() -> Evaluation:
            terms = segment_terms(self.spec, fan.points, caps, cfg.alpha)
            objective = float(np.sum(terms.objective))
            grads = {"interior": terms.grad[:, 1:-1, :]}
            grad_c = np.sum(terms.grad[:, 0, :], axis=0) if move_centroid else None
            if cfg.include_centroid_prior:
                w, scale = clamped_nll_and_scale(self.spec, np.linalg.norm(fan.c))
                objective += float(w)
                if grad_c is not None:
                    grad_c += float(scale) * fan.c
            if grad_c is not None:
                grads["centroid"] = grad_c
            return Evaluation(objective, float(np.sum(terms.penalty)), grads,
                              within_caps(terms.lengths, terms.caps, cfg.feasibility_tol))

        params = {"interior": fan.points[:, 1:-1, :]}
        if move_centroid:
            params["centroid"] = fan.c
        return descend(params, evaluate, cfg, sync=fan.anchor if move_centroid else None,
                       label="centroid" if move_centroid else "fixed centroid")

    def _report(self, fan: _Fan, caps: Caps, outcome: DescentOutcome) -> OptimReport:
        lengths = np.linalg.norm(np.diff(fan.points, axis=1), axis=2)
        resolved = np.array(segment_caps(lengths, caps), dtype=np.float64)
        return OptimReport(
            objective_trace=outcome.objective_trace,
            penalty_trace=outcome.penalty_trace,
            iterate_objective_trace=outcome.iterate_objective_trace,
            iterate_penalty_trace=outcome.iterate_penalty_trace,
            initial_objective=outcome.initial_objective,
            final_objective=outcome.final_objective,
            final_penalty=outcome.final_penalty,
            max_segment_violation=float(np.max(lengths - resolved[:, None])),
            deltas=resolved.tolist(),
            iterations_used=outcome.iterations_used,
            converged=outcome.converged,
            stop_reason=outcome.stop_reason,
            final_grad_inf_norm=outcome.final_grad_inf_norm,
        )

    def evaluate_fixed_centroid(self, c: SeedPoint, seeds, cfg: CentroidConfig
                                ) -> Tuple[float, List[PiecewisePath]]:
        """
        Optimize the k paths from a fixed centroid and return the joint objective at c.

        The paths go through the same descent optimize_centroid uses to score its starting
        candidates, so both agree exactly at the same centroid.

        Returns:
            (W(c) + sum of the optimized path objectives, paths in seed order)
        """
        c = as_seed(c, self.spec.d)
        seeds = as_seed_matrix(seeds, self.spec.d)
        order = np.lexsort(seeds.T[::-1])
        caps = self._ordered_caps(cfg, order)

        fan = _Fan(c, seeds[order], cfg.per_path_n)
        outcome = self._descend(fan, caps, cfg, move_centroid=False)
        paths = [PiecewisePath(points=fan.points[position].copy()) for position in np.argsort(order)]
        logger.info(f"Joint objective at fixed centroid (norm {np.linalg.norm(c):.6g}): "
                    f"{outcome.final_objective:.6g}")
        return outcome.final_objective, paths

    def sample_paths(self, result: CentroidResult, m: int) -> npt.NDArray[np.float64]:
        """m arc-length-uniform points on every centroid path, stacked path by path into (k * m, d)"""
        return np.concatenate([sample_along(path, m) for path in result.paths], axis=0)
