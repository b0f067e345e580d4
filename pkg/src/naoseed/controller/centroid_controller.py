import argparse
import logging
import time
from typing import Dict, List, Optional

import numpy as np

from ..error.command_error import CommandError
from ..error.invalid_input_error import InvalidInputError
from ..model.centroid_problem import CentroidConfig, CentroidProblem
from ..model.centroid_report import CentroidMethod, CentroidReport
from ..model.prior_spec import PriorSpec
from ..model.seed_set import SeedSet
from ..service.centroid_service import CentroidService
from ..service.path_service import PathService
from ..utils.baselines import euclidean_centroid, normalized_euclidean_centroid, sphere_projection_centroid
from ..utils.seed_file_manager import SeedFileManager
from .command_support import EXIT_DEGENERATE, EXIT_OK, add_centroid_flags, as_command_error, centroid_config_from

logger = logging.getLogger(__name__)

METHODS: List[CentroidMethod] = ["euclidean", "norm-euclidean", "sphere", "nao"]


def register(subparsers) -> None:
    centroid = subparsers.add_parser("centroid", help="centroid of the seeds of a file")
    centroid.add_argument("--method", choices=METHODS, default="nao")
    centroid.add_argument("--in", dest="input", required=True)
    add_centroid_flags(centroid)
    centroid.add_argument("--sphere-tol", type=float, default=1e-12)
    centroid.add_argument("--sphere-iters", type=int, default=1000)
    centroid.add_argument("--compare", action="store_true",
                          help="report the joint objective at every method's centroid")
    centroid.add_argument("--samples", type=int, default=0, help="seeds sampled along each centroid path (nao)")
    centroid.add_argument("--samples-out")
    centroid.add_argument("--out", required=True)
    centroid.add_argument("--report")
    centroid.set_defaults(handler=cmd_centroid)


def get_service(spec: PriorSpec) -> CentroidService:
    return CentroidService(spec, PathService(spec))


def cmd_centroid(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        if args.samples < 0:
            raise InvalidInputError(f"--samples must be >= 0, got {args.samples}")
        if args.samples and args.method != "nao":
            raise InvalidInputError("--samples needs --method nao, the only method that produces paths")
        if args.samples and not args.samples_out:
            raise InvalidInputError("--samples needs --samples-out")

        manager = SeedFileManager()
        seedset = manager.read_seedset(args.input)
        spec = PriorSpec.for_dimension(seedset.d)
        cfg = centroid_config_from(args)
        service = get_service(spec)

        report = CentroidReport(method=args.method, dim=spec.d, k=seedset.count, centroid_norm=0.0,
                                mode_radius=spec.mode_radius, config=cfg)
        not_converged = False

        if args.method == "nao":
            result = service.optimize_centroid(CentroidProblem(seeds=seedset.seeds, config=cfg))
            centroid = result.centroid
            report.joint_objective = result.report.final_objective
            report.optim = result.report
            report.start = result.start
            not_converged = not result.report.converged
            if args.samples:
                samples = service.sample_paths(result, args.samples)
                manager.write_seedset(args.samples_out, SeedSet(seeds=samples, dtype=seedset.dtype))
                report.samples = args.samples
        elif args.method == "sphere":
            sphere = sphere_projection_centroid(spec, seedset.seeds, args.sphere_tol, args.sphere_iters)
            centroid = sphere.centroid
            report.sphere_iterations = sphere.iterations
            report.sphere_converged = sphere.converged
            not_converged = not sphere.converged
        elif args.method == "norm-euclidean":
            centroid = normalized_euclidean_centroid(spec, seedset.seeds)
        else:
            centroid = euclidean_centroid(seedset.seeds)

        report.centroid_norm = float(np.linalg.norm(centroid))
        if report.centroid_norm == 0.0:
            report.warnings.append("Centroid is at the origin, where the prior weight is infinite")
        logger.info(f"{args.method} centroid norm: {report.centroid_norm:.6g} (mode radius {spec.mode_radius:.6g})")

        if args.compare:
            report.comparison = _compare(service, spec, seedset.seeds, cfg, args, report.warnings,
                                         report.joint_objective if args.method == "nao" else None)

        manager.write_seedset(args.out, SeedSet(seeds=centroid[None, :], dtype=seedset.dtype))
        if args.report:
            report.timing_seconds = time.perf_counter() - started
            manager.write_report(args.report, report)

        if not_converged:
            raise CommandError(EXIT_DEGENERATE, f"{args.method} centroid did not converge (outputs were written)")
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e


def _compare(service: CentroidService, spec: PriorSpec, seeds: np.ndarray, cfg: CentroidConfig,
             args: argparse.Namespace, warnings: List[str], nao_objective: Optional[float]) -> Dict[str, float]:
    """Joint objective at each centroid: the optimizer's own value for nao, re-optimized paths otherwise"""
    comparison: Dict[str, float] = {}
    for method in METHODS:
        try:
            if method == "nao":
                if nao_objective is None:
                    nao_objective = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg)) \
                        .report.final_objective
                comparison[method] = nao_objective
                continue
            if method == "sphere":
                centroid = sphere_projection_centroid(spec, seeds, args.sphere_tol, args.sphere_iters).centroid
            elif method == "norm-euclidean":
                centroid = normalized_euclidean_centroid(spec, seeds)
            else:
                centroid = euclidean_centroid(seeds)
            comparison[method], _ = service.evaluate_fixed_centroid(centroid, seeds, cfg)
        except ArithmeticError as e:
            warnings.append(f"{method} skipped in comparison: {e}")
            logger.warning(f"{method} skipped in comparison: {e}")
    return comparison
