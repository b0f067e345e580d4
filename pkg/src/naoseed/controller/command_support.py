import argparse
import logging
from typing import List, Literal, Union

from pydantic import ValidationError

from ..error.ambiguous_arc_error import AmbiguousArcError
from ..error.command_error import CommandError
from ..error.invalid_input_error import InvalidInputError
from ..error.seed_format_error import SeedFormatError
from ..model.centroid_problem import CentroidConfig
from ..model.path_config import PathConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DEGENERATE = 3


def as_command_error(e: Exception) -> CommandError:
    """Map a domain exception onto the exit code of the command that raised it"""
    if isinstance(e, (InvalidInputError, SeedFormatError, ValidationError, AmbiguousArcError, OSError)):
        return CommandError(EXIT_INVALID, str(e))
    if isinstance(e, ArithmeticError):
        return CommandError(EXIT_DEGENERATE, str(e))
    logger.exception("Unexpected failure")
    return CommandError(1, f"Internal error: {e}")


def parse_delta(text: str) -> Union[Literal["auto"], float]:
    if text.strip().lower() == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"delta must be 'auto' or a number, got {text!r}")


def parse_delta_list(text: str) -> List[Union[Literal["auto"], float]]:
    return [parse_delta(item) for item in text.split(",") if item.strip()]


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a comma-separated list of numbers, got {text!r}")


def add_optimizer_flags(parser: argparse.ArgumentParser) -> None:
    defaults = PathConfig()
    group = parser.add_argument_group("optimizer")
    group.add_argument("--n", type=int, default=defaults.n, help="segments per path")
    group.add_argument("--alpha", type=float, default=defaults.alpha, help="segment penalty weight")
    group.add_argument("--iters", type=int, default=defaults.max_iters, help="maximum Adam iterations")
    group.add_argument("--lr", type=float, default=defaults.step_size, help="Adam step size at the first iteration")
    group.add_argument("--step-floor", type=float, default=defaults.step_floor,
                       help="final step size as a fraction of --lr (cosine decay)")
    group.add_argument("--grad-tol", type=float, default=defaults.grad_tol,
                       help="stop when the gradient infinity-norm is below this")
    group.add_argument("--stall-window", type=int, default=defaults.stall_window,
                       help="iterations over which the best merit must keep improving")
    group.add_argument("--stall-tol", type=float, default=defaults.stall_tol,
                       help="relative improvement over --stall-window that counts as stalled")
    group.add_argument("--feasibility-tol", type=float, default=defaults.feasibility_tol,
                       help="allowed segment violation as a fraction of the cap")
    group.add_argument("--log-every", type=int, default=defaults.log_every, help="iterations between debug lines")


def descent_settings(args: argparse.Namespace) -> dict:
    return dict(
        alpha=args.alpha,
        step_size=args.lr,
        step_floor=args.step_floor,
        max_iters=args.iters,
        grad_tol=args.grad_tol,
        stall_window=args.stall_window,
        stall_tol=args.stall_tol,
        feasibility_tol=args.feasibility_tol,
        log_every=args.log_every,
    )


def path_config_from(args: argparse.Namespace, delta: Union[str, float] = "auto") -> PathConfig:
    return PathConfig(n=args.n, delta=delta, **descent_settings(args))


def centroid_config_from(args: argparse.Namespace) -> CentroidConfig:
    return CentroidConfig(
        per_path_n=args.n,
        delta=args.delta,
        include_centroid_prior=not args.no_centroid_prior,
        **descent_settings(args),
    )


def parse_centroid_delta(text: str) -> Union[Literal["auto"], List[float]]:
    """'auto' or one comma-separated cap per seed"""
    if text.strip().lower() == "auto":
        return "auto"
    return parse_float_list(text)


def add_centroid_flags(parser: argparse.ArgumentParser) -> None:
    add_optimizer_flags(parser)
    parser.add_argument("--delta", type=parse_centroid_delta, default="auto",
                        help="'auto' or one comma-separated cap per seed")
    parser.add_argument("--no-centroid-prior", action="store_true", help="drop the W(c) term from the objective")
