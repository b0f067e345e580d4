import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..error.invalid_input_error import InvalidInputError
from ..model.metric_audit_report import AuditTrial, MetricAuditReport
from ..model.path_config import PathConfig
from ..model.piecewise_path import PiecewisePath
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint
from ..utils.path_calculations import path_objective
from ..utils.rng import RngState
from .path_service import PathService

logger = logging.getLogger(__name__)

Triple = Tuple[SeedPoint, SeedPoint, SeedPoint]

# Re-optimizing a concatenated path may not end above it by more than this.
CONCATENATION_SLACK = 1e-9


class MetricService:
    def __init__(self, spec: PriorSpec, path_service: PathService, threads: Optional[int] = None):
        """
        :param spec: Prior constants
        :param path_service: Optimizer used for every distance estimate
        :param threads: Worker threads for audit trials (default: os.cpu_count())
        """
        self.spec = spec
        self.path_service = path_service
        self.threads = threads or os.cpu_count() or 1

    def distance(self, x: SeedPoint, y: SeedPoint, cfg: PathConfig) -> float:
        """Upper-bound estimate of the induced distance: the optimized path objective (0 for x = y)"""
        _, report = self.path_service.optimize_path(x, y, cfg)
        return report.final_objective

    def audit_metric(self, trials: int, cfg: PathConfig, rng: RngState,
                     symmetry_tolerance: float = 0.01, triangle_tolerance: float = 0.02) -> MetricAuditReport:
        """
        Check the metric axioms on random Gaussian triples.

        Triples are drawn up front from rng, so the report depends only on its seed and not
        on how trials are scheduled across threads.

        Raises:
            InvalidInputError: If trials < 1
        """
        if trials < 1:
            raise InvalidInputError(f"trials must be >= 1, got {trials}")

        triples = [tuple(rng.gaussian_stream(self.spec.d) for _ in range(3)) for _ in range(trials)]
        return self.audit_triples(triples, cfg, rng.seed, symmetry_tolerance, triangle_tolerance)

    def audit_triples(self, triples: Sequence[Triple], cfg: PathConfig, rng_seed: int = 0,
                      symmetry_tolerance: float = 0.01, triangle_tolerance: float = 0.02) -> MetricAuditReport:
        """Run the axiom checks on the given triples; failures become report entries, never exceptions"""
        if not triples:
            raise InvalidInputError("At least one triple is required")

        logger.info(f"Auditing {len(triples)} triples at d={self.spec.d} with {self.threads} threads")
        try:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                details: List[AuditTrial] = list(executor.map(lambda triple: self._trial(triple, cfg), triples))
        except Exception as e:
            logger.error(f"Metric audit failed: {e}")
            raise

        symmetry_violations = sum(1 for t in details if t.symmetry_rel > symmetry_tolerance)
        triangle_violations = sum(1 for t in details if t.triangle_slack > triangle_tolerance * t.f_xz)
        gaps = [t.reoptimized_objective - t.concatenated_objective for t in details]
        concatenation_failures = sum(1 for gap in gaps if gap > CONCATENATION_SLACK)

        report = MetricAuditReport(
            dim=self.spec.d,
            trials=len(details),
            rng_seed=rng_seed,
            identity_max_abs=max(abs(t.f_xx) for t in details),
            symmetry_max_rel=max(t.symmetry_rel for t in details),
            symmetry_violations=symmetry_violations,
            triangle_violations=triangle_violations,
            triangle_worst_slack=max(t.triangle_slack for t in details),
            concatenation_failures=concatenation_failures,
            concatenation_worst_gap=max(gaps),
            symmetry_tolerance=symmetry_tolerance,
            triangle_tolerance=triangle_tolerance,
            config=cfg,
            trial_details=details,
        )
        logger.info(f"Audit done: symmetry violations={symmetry_violations}, "
                    f"triangle violations={triangle_violations}, concatenation failures={concatenation_failures}")
        return report

    def _trial(self, triple: Triple, cfg: PathConfig) -> AuditTrial:
        x, y, z = triple
        f_xx = self.distance(x, x, cfg)
        path_xy, report_xy = self.path_service.optimize_path(x, y, cfg)
        _, report_yx = self.path_service.optimize_path(y, x, cfg)
        path_yz, report_yz = self.path_service.optimize_path(y, z, cfg)
        f_xz = self.distance(x, z, cfg)
        f_xy, f_yx, f_yz = report_xy.final_objective, report_yx.final_objective, report_yz.final_objective

        larger = max(f_xy, f_yx)
        symmetry_rel = abs(f_xy - f_yx) / larger if larger > 0 else 0.0

        concatenated = PiecewisePath(points=np.concatenate([path_xy.points, path_yz.points[1:]], axis=0))
        concatenated_objective = path_objective(self.spec, concatenated)
        _, report_xz = self.path_service.optimize_path(x, z, cfg, init_path=concatenated)

        return AuditTrial(
            f_xx=f_xx,
            f_xy=f_xy,
            f_yx=f_yx,
            f_yz=f_yz,
            f_xz=f_xz,
            symmetry_rel=symmetry_rel,
            triangle_slack=f_xz - f_xy - f_yz,
            concatenated_objective=concatenated_objective,
            reoptimized_objective=report_xz.final_objective,
        )
