import argparse
import logging
import time
from typing import Tuple

import numpy as np
import pandas as pd

from ..error.command_error import CommandError
from ..error.invalid_input_error import InvalidInputError
from ..model.delta_sweep_report import DeltaSweepReport
from ..model.interpolation_report import DistanceReport, InterpolationReport
from ..model.prior_spec import PriorSpec
from ..model.seed_set import SeedSet
from ..service.path_service import PathService
from ..utils.path_calculations import path_diagnostics, path_objective, sample_along
from ..utils.seed_file_manager import SeedFileManager
from .command_support import (EXIT_DEGENERATE, EXIT_OK, add_optimizer_flags, as_command_error, parse_delta,
                              parse_delta_list, path_config_from)

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    interpolate = subparsers.add_parser("interpolate", help="interpolate between the two seeds of a file")
    interpolate.add_argument("--method", choices=["lerp", "slerp", "nao"], default="nao")
    interpolate.add_argument("--in", dest="input", required=True)
    interpolate.add_argument("--delta", type=parse_delta, default="auto")
    add_optimizer_flags(interpolate)
    interpolate.add_argument("--samples", type=int, default=3, help="seeds sampled along the path")
    interpolate.add_argument("--out-path", help="path dump (.csv for d <= 64, binary seed file otherwise)")
    interpolate.add_argument("--samples-out", help="seed file receiving the sampled seeds")
    interpolate.add_argument("--report")
    interpolate.set_defaults(handler=cmd_interpolate)

    distance = subparsers.add_parser("distance", help="estimate the induced distance between two seeds")
    distance.add_argument("--in", dest="input", required=True)
    distance.add_argument("--delta", type=parse_delta, default="auto")
    add_optimizer_flags(distance)
    distance.add_argument("--report")
    distance.set_defaults(handler=cmd_distance)

    sweep = subparsers.add_parser("delta-sweep", help="optimize one pair at several segment caps")
    sweep.add_argument("--in", dest="input", required=True)
    sweep.add_argument("--deltas", type=parse_delta_list, default=["auto"],
                       help="comma-separated caps, 'auto' and 'inf' allowed")
    add_optimizer_flags(sweep)
    sweep.add_argument("--table", help="CSV table of the sweep")
    sweep.add_argument("--report")
    sweep.set_defaults(handler=cmd_delta_sweep)


def _load_pair(manager: SeedFileManager, path: str) -> Tuple[PriorSpec, np.ndarray, np.ndarray]:
    seedset = manager.read_seedset(path)
    if seedset.count != 2:
        raise InvalidInputError(f"Expected exactly 2 seeds in {path}, found {seedset.count}")
    return PriorSpec.for_dimension(seedset.d), seedset.seeds[0], seedset.seeds[1]


def cmd_interpolate(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        if args.samples < 1:
            raise InvalidInputError(f"--samples must be >= 1, got {args.samples}")
        manager = SeedFileManager()
        spec, z1, z2 = _load_pair(manager, args.input)
        cfg = path_config_from(args, args.delta)

        path, optim = PathService(spec).interpolate(args.method, z1, z2, cfg)
        samples = sample_along(path, args.samples)
        objective = optim.final_objective if optim is not None else path_objective(spec, path)
        logger.info(f"{args.method} path objective: {objective:.6g}")

        if args.out_path:
            manager.write_path(args.out_path, path)
        if args.samples_out:
            manager.write_seedset(args.samples_out, SeedSet(seeds=samples))
        if args.report:
            manager.write_report(args.report, InterpolationReport(
                method=args.method,
                dim=spec.d,
                n=path.n,
                objective=objective,
                samples=args.samples,
                diagnostics=path_diagnostics(spec, path),
                optim=optim,
                config=cfg,
                timing_seconds=time.perf_counter() - started,
            ))

        if optim is not None and not optim.converged:
            raise CommandError(EXIT_DEGENERATE, f"Optimizer did not converge within {cfg.max_iters} iterations "
                                                f"(outputs were written)")
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e


def cmd_distance(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        manager = SeedFileManager()
        spec, z1, z2 = _load_pair(manager, args.input)
        cfg = path_config_from(args, args.delta)

        _, optim = PathService(spec).optimize_path(z1, z2, cfg)
        logger.info(f"Estimated distance: {optim.final_objective:.6g}")
        if args.report:
            manager.write_report(args.report, DistanceReport(
                dim=spec.d,
                distance=optim.final_objective,
                optim=optim,
                config=cfg,
                timing_seconds=time.perf_counter() - started,
            ))

        if not optim.converged:
            raise CommandError(EXIT_DEGENERATE, f"Optimizer did not converge within {cfg.max_iters} iterations "
                                                f"(outputs were written)")
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e


def cmd_delta_sweep(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        manager = SeedFileManager()
        spec, z1, z2 = _load_pair(manager, args.input)
        cfg = path_config_from(args)

        entries = PathService(spec).delta_sweep(z1, z2, cfg, args.deltas)
        if args.table:
            table = pd.DataFrame([entry.model_dump() for entry in entries])
            manager.write_table(args.table, table)
        if args.report:
            manager.write_report(args.report, DeltaSweepReport(
                dim=spec.d,
                n=cfg.n,
                entries=entries,
                config=cfg,
                timing_seconds=time.perf_counter() - started,
            ))
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e
