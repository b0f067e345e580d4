import argparse
import logging
import os
import sys
from typing import List, Optional

from .controller import audit_controller, centroid_controller, grid_controller, interpolation_controller, \
    seed_controller
from .error.command_error import CommandError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="naoseed",
                                     description="Norm-aware interpolation, distances and centroids of Gaussian seeds")
    parser.add_argument("--log-level", default=os.environ.get("NAO_LOG_LEVEL", "INFO"),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper,
                        help="logging level (default: NAO_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    seed_controller.register(subparsers)
    interpolation_controller.register(subparsers)
    centroid_controller.register(subparsers)
    audit_controller.register(subparsers)
    grid_controller.register(subparsers)
    return parser


def threads_from_env() -> Optional[int]:
    """NAO_THREADS as a positive integer, None when unset"""
    raw = os.environ.get("NAO_THREADS")
    if not raw:
        return None
    try:
        threads = int(raw)
    except ValueError:
        raise CommandError(2, f"NAO_THREADS must be a positive integer, got {raw!r}")
    if threads < 1:
        raise CommandError(2, f"NAO_THREADS must be a positive integer, got {raw!r}")
    return threads


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)

    # For debug only
    if os.environ.get("DEBUGPY", "0") == "1":
        import debugpy
        debugpy.listen(("0.0.0.0", 5678))
        logger.info("Debugger can attach at port 5678")

    try:
        if getattr(args, "threads", 0) is None:
            args.threads = threads_from_env()
        return args.handler(args)
    except CommandError as e:
        logger.error(f"{args.command} failed: {e.detail}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
