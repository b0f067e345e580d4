import logging
import os
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import numpy.typing as npt  # noqa: E402

logger = logging.getLogger(__name__)

CONTOUR_LEVELS = 10


def write_contour_svg(path: Union[str, os.PathLike], grid: npt.NDArray[np.float64], low: float, high: float) -> None:
    """
    Render a log-density grid as filled contours with a fixed 10-level scale.

    Args:
        path: Target .svg file
        grid: Values at cell centers, row i for x, column j for y
        low: Lower bound of both axes
        high: Upper bound of both axes
    """
    resolution = grid.shape[0]
    centers = low + (np.arange(resolution) + 0.5) * ((high - low) / resolution)
    finite = grid[np.isfinite(grid)]
    levels = np.linspace(float(finite.min()), float(finite.max()), CONTOUR_LEVELS + 1)

    fig, ax = plt.subplots(figsize=(5, 5))
    try:
        filled = ax.contourf(centers, centers, grid.T, levels=levels, cmap="viridis")
        fig.colorbar(filled, ax=ax, label="log pdf")
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        fig.savefig(path, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    logger.info(f"Wrote contour plot to {path}")
