import argparse
import logging
import time

from ..error.command_error import CommandError
from ..error.invalid_input_error import InvalidInputError
from ..model.grid_spec import GridSpec
from ..model.oracle_report import OracleReport
from ..model.prior_spec import PriorSpec
from ..service.oracle_service import OracleService
from ..utils.chi_prior import log_pdf_grid
from ..utils.contour_plot import write_contour_svg
from ..utils.seed_file_manager import SeedFileManager
from .command_support import EXIT_OK, as_command_error

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    prior_grid = subparsers.add_parser("prior-grid", help="log pdf of the 2D prior on a square grid")
    prior_grid.add_argument("--dim", type=int, default=2)
    prior_grid.add_argument("--min", dest="low", type=float, default=-2.0)
    prior_grid.add_argument("--max", dest="high", type=float, default=2.0)
    prior_grid.add_argument("--res", type=int, default=256)
    prior_grid.add_argument("--out", required=True, help="R x R CSV")
    prior_grid.add_argument("--svg", help="optional filled-contour rendering")
    prior_grid.set_defaults(handler=cmd_prior_grid)

    oracle = subparsers.add_parser("oracle2d", help="grid shortest path between the two seeds of a 2D file")
    oracle.add_argument("--in", dest="input", required=True)
    oracle.add_argument("--res", type=int, default=512)
    oracle.add_argument("--stencil", type=int, choices=[8, 16], default=16)
    oracle.add_argument("--min", dest="low", type=float, default=-2.0)
    oracle.add_argument("--max", dest="high", type=float, default=2.0)
    oracle.add_argument("--report", required=True)
    oracle.set_defaults(handler=cmd_oracle2d)


def cmd_prior_grid(args: argparse.Namespace) -> int:
    try:
        spec = PriorSpec.for_dimension(args.dim)
        grid = log_pdf_grid(spec, args.low, args.high, args.res)
        manager = SeedFileManager()
        manager.write_grid_csv(args.out, grid)
        if args.svg:
            write_contour_svg(args.svg, grid, args.low, args.high)
        logger.info(f"Wrote {args.res}x{args.res} prior grid to {args.out}")
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e


def cmd_oracle2d(args: argparse.Namespace) -> int:
    try:
        started = time.perf_counter()
        manager = SeedFileManager()
        seedset = manager.read_seedset(args.input)
        if seedset.count != 2:
            raise InvalidInputError(f"Expected exactly 2 seeds in {args.input}, found {seedset.count}")

        spec = PriorSpec.for_dimension(seedset.d)
        grid = GridSpec(min_corner=(args.low, args.low), max_corner=(args.high, args.high),
                        resolution=args.res, stencil=args.stencil)
        result = OracleService(spec).grid_shortest_path(grid, seedset.seeds[0], seedset.seeds[1])
        manager.write_report(args.report, OracleReport(result=result, timing_seconds=time.perf_counter() - started))
        return EXIT_OK
    except CommandError:
        raise
    except Exception as e:
        raise as_command_error(e) from e
