import argparse
import logging
import math
import time

import numpy as np

from ..error.command_error import CommandError
from ..error.invalid_input_error import InvalidInputError
from ..model.prior_spec import PriorSpec
from ..model.seed_report import NormSweepReport, SampleReport
from ..model.seed_set import SeedSet
from ..utils.chi_prior import norm_statistics, norm_sweep, sample_seed
from ..utils.rng import RngState
from ..utils.seed_file_manager import SeedFileManager
from .command_support import EXIT_OK, as_command_error, parse_float_list

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    sample = subparsers.add_parser("sample", help="draw Gaussian seeds into a seed file")
    sample.add_argument("--dim", type=int, required=True)
    sample.add_argument("--count", type=int, required=True)
    sample.add_argument("--rng-seed", type=int, required=True)
    sample.add_argument("--out", required=True)
    sample.add_argument("--dtype", choices=["f64", "f32"], default="f64")
    sample.add_argument("--report", help="optional JSON report with observed and expected norms")
    sample.set_defaults(handler=cmd_sample)

    sweep = subparsers.add_parser("norm-sweep", help="rescale one seed to a list of norms")
    sweep.add_argument("--in", dest="input", required=True)
    sweep.add_argument("--index", type=int, default=0, help="row of the seed to rescale")
    sweep.add_argument("--norms", type=parse_float_list, required=True, help="comma-separated target norms")
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--report")
    sweep.set_defaults(handler=cmd_norm_sweep)


def cmd_sample(args: argparse.Namespace) -> int:
    """Write --count seeds z ~ N(0, I_dim) drawn from the xoshiro stream seeded by --rng-seed"""
    try:
        started = time.perf_counter()
        if args.count < 1:
            raise InvalidInputError(f"--count must be >= 1, got {args.count}")
        spec = PriorSpec.for_dimension(args.dim)
        rng = RngState(args.rng_seed)
        logger.info(f"Sampling {args.count} seeds of dimension {args.dim} with seed {args.rng_seed}")

        seeds = np.stack([sample_seed(spec, rng) for _ in range(args.count)])
        manager = SeedFileManager()
        manager.write_seedset(args.out, SeedSet(seeds=seeds, dtype=args.dtype))

        if args.report:
            mean, variance = norm_statistics(spec)
            manager.write_report(args.report, SampleReport(
                dim=spec.d,
                count=args.count,
                rng_seed=args.rng_seed,
                algorithm=RngState.algorithm,
                dtype=args.dtype,
                norms=np.linalg.norm(seeds, axis=1).tolist(),
                expected_norm_mean=mean,
                expected_norm_std=math.sqrt(variance),
                mode_radius=spec.mode_radius,
                timing_seconds=time.perf_counter() - started,
            ))
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e


def cmd_norm_sweep(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        manager = SeedFileManager()
        seedset = manager.read_seedset(args.input)
        if not 0 <= args.index < seedset.count:
            raise InvalidInputError(f"--index {args.index} is out of range for {seedset.count} seeds")
        if not args.norms:
            raise InvalidInputError("--norms must name at least one norm")

        spec = PriorSpec.for_dimension(seedset.d)
        source = seedset.seeds[args.index]
        seeds, nll = norm_sweep(spec, source, args.norms)
        manager.write_seedset(args.out, SeedSet(seeds=seeds, dtype=seedset.dtype))

        if args.report:
            manager.write_report(args.report, NormSweepReport(
                dim=spec.d,
                index=args.index,
                source_norm=float(np.linalg.norm(source)),
                norms=[float(value) for value in args.norms],
                nll=nll.tolist(),
                mode_radius=spec.mode_radius,
                timing_seconds=time.perf_counter() - started,
            ))
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e
