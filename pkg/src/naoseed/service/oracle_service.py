import logging
import math
from typing import List, Tuple

import numpy as np
import numpy.typing as npt
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from ..error.invalid_input_error import InvalidInputError
from ..model.grid_spec import GridSpec, OracleResult
from ..model.prior_spec import PriorSpec
from ..model.seed_point import SeedPoint, as_seed
from ..utils.chi_prior import nll_of_norms

logger = logging.getLogger(__name__)

# Half stencils: each undirected edge is generated once, the graph is searched undirected.
STENCIL_OFFSETS = {
    8: [(1, 0), (0, 1), (1, 1), (1, -1)],
    16: [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)],
}


class OracleService:
    def __init__(self, spec: PriorSpec):
        """
        :param spec: Prior constants, d must be 2
        """
        if spec.d != 2:
            raise InvalidInputError(f"The grid oracle works in d = 2 only, got d = {spec.d}")
        self.spec = spec

    def grid_shortest_path(self, grid: GridSpec, a: SeedPoint, b: SeedPoint) -> OracleResult:
        """
        Shortest weighted path between the grid nodes nearest to a and b.

        Nodes sit at min_corner + (i, j) * cell for i, j in 0..resolution, so doubling the
        resolution nests the old nodes in the new grid. An edge (u, v) of the stencil costs
        W((u + v) / 2) * |u - v|; the origin node and edges of infinite cost are removed.

        Args:
            grid: Lattice bounds, resolution and stencil
            a: Start point
            b: End point

        Returns:
            Cost, node polyline from a to b, snapped endpoints and the snapping error

        Raises:
            InvalidInputError: If a or b lies outside the grid, snaps to the origin or cannot be reached
        """
        a = as_seed(a, 2)
        b = as_seed(b, 2)
        xs, ys = self._axes(grid)
        source = self._snap(grid, xs, ys, a)
        target = self._snap(grid, xs, ys, b)
        size = grid.resolution + 1

        def node_point(node: int) -> Tuple[float, float]:
            return float(xs[node // size]), float(ys[node % size])

        snapped_a, snapped_b = node_point(source), node_point(target)
        snap_error = max(math.dist(snapped_a, a), math.dist(snapped_b, b))
        cell_diagonal = math.hypot(xs[1] - xs[0], ys[1] - ys[0])

        if source == target:
            cost, polyline = 0.0, [snapped_a]
        else:
            graph = self._build_graph(grid, xs, ys)
            distances, predecessors = dijkstra(graph, directed=False, indices=source, return_predecessors=True)
            cost = float(distances[target])
            if not math.isfinite(cost):
                raise InvalidInputError("The grid endpoints are not connected")
            polyline = [node_point(node) for node in self._walk_back(predecessors, source, target)]

        logger.info(f"Grid oracle ({grid.resolution}^2, {grid.stencil}-stencil): cost={cost:.6g}, "
                    f"{len(polyline)} nodes")
        return OracleResult(
            cost=cost,
            polyline=polyline,
            snapped_a=snapped_a,
            snapped_b=snapped_b,
            snap_error=snap_error,
            cell_diagonal=cell_diagonal,
            grid=grid,
        )

    @staticmethod
    def _axes(grid: GridSpec) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        steps = np.arange(grid.resolution + 1) / grid.resolution
        xs = grid.min_corner[0] + steps * (grid.max_corner[0] - grid.min_corner[0])
        ys = grid.min_corner[1] + steps * (grid.max_corner[1] - grid.min_corner[1])
        return xs, ys

    @staticmethod
    def _snap(grid: GridSpec, xs: np.ndarray, ys: np.ndarray, point: np.ndarray) -> int:
        x, y = float(point[0]), float(point[1])
        if not (grid.min_corner[0] <= x <= grid.max_corner[0] and grid.min_corner[1] <= y <= grid.max_corner[1]):
            raise InvalidInputError(f"Point ({x}, {y}) lies outside the grid bounds")

        i = int(np.argmin(np.abs(xs - x)))
        j = int(np.argmin(np.abs(ys - y)))
        if xs[i] == 0.0 and ys[j] == 0.0:
            raise InvalidInputError(f"Point ({x}, {y}) snaps to the origin, where the prior weight is infinite")
        return i * (grid.resolution + 1) + j

    def _build_graph(self, grid: GridSpec, xs: np.ndarray, ys: np.ndarray):
        size = grid.resolution + 1
        ii, jj = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
        at_origin = (xs[ii] == 0.0) & (ys[jj] == 0.0)

        rows, cols, weights = [], [], []
        for di, dj in STENCIL_OFFSETS[grid.stencil]:
            valid = (ii + di < size) & (jj + dj >= 0) & (jj + dj < size)
            i0, j0 = ii[valid], jj[valid]
            i1, j1 = i0 + di, j0 + dj

            mid_x = 0.5 * (xs[i0] + xs[i1])
            mid_y = 0.5 * (ys[j0] + ys[j1])
            length = np.hypot(xs[i1] - xs[i0], ys[j1] - ys[j0])
            with np.errstate(divide="ignore"):
                weight = nll_of_norms(self.spec, np.hypot(mid_x, mid_y)) * length

            keep = np.isfinite(weight) & ~at_origin[i0, j0] & ~at_origin[i1, j1]
            rows.append(i0[keep] * size + j0[keep])
            cols.append(i1[keep] * size + j1[keep])
            weights.append(weight[keep])

        nodes = size * size
        return coo_matrix((np.concatenate(weights), (np.concatenate(rows), np.concatenate(cols))),
                          shape=(nodes, nodes)).tocsr()

    @staticmethod
    def _walk_back(predecessors: np.ndarray, source: int, target: int) -> List[int]:
        nodes = [target]
        while nodes[-1] != source:
            nodes.append(int(predecessors[nodes[-1]]))
        nodes.reverse()
        return nodes
