import argparse
import logging
import time

from ..error.command_error import CommandError
from ..model.prior_spec import PriorSpec
from ..service.metric_service import MetricService
from ..service.path_service import PathService
from ..utils.rng import RngState
from ..utils.seed_file_manager import SeedFileManager
from .command_support import EXIT_OK, add_optimizer_flags, as_command_error, path_config_from

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    audit = subparsers.add_parser("audit", help="check the metric axioms on random seed triples")
    audit.add_argument("--dim", type=int, required=True)
    audit.add_argument("--trials", type=int, required=True)
    audit.add_argument("--rng-seed", type=int, default=0)
    add_optimizer_flags(audit)
    audit.add_argument("--symmetry-tol", type=float, default=0.01, help="relative symmetry tolerance")
    audit.add_argument("--triangle-tol", type=float, default=0.02, help="triangle slack tolerance relative to f(x, z)")
    audit.add_argument("--threads", type=int, default=None, help="worker threads (default: NAO_THREADS or CPU count)")
    audit.add_argument("--report", required=True)
    audit.set_defaults(handler=cmd_audit)


def cmd_audit(args: argparse.Namespace) -> int:
    """Run the audit; violations are report content, the command itself succeeds"""
    try:
        started = time.perf_counter()
        spec = PriorSpec.for_dimension(args.dim)
        cfg = path_config_from(args)
        service = MetricService(spec, PathService(spec), args.threads)

        report = service.audit_metric(args.trials, cfg, RngState(args.rng_seed),
                                      args.symmetry_tol, args.triangle_tol)
        SeedFileManager().write_report(args.report, report)
        logger.info(f"Audit of {args.trials} trials took {time.perf_counter() - started:.2f} s")
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e
