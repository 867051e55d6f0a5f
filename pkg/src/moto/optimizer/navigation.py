"""Coarse A* over an inflated occupancy grid to bring the base near the target."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

# Extra cost for stepping through an occupied cell (only useful to leave a
# start cell that is itself inside the inflated obstacle region).
_OCCUPIED_PENALTY = 10.0
_MOVES = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    origin: np.ndarray  # world xy of cell (0, 0) centre
    cell: float
    occupied: np.ndarray  # (nx, ny) bool

    def centre(self, ij) -> np.ndarray:
        return self.origin + self.cell * np.asarray(ij, dtype=float)

    def cell_of(self, xy) -> tuple[int, int]:
        ij = np.round((np.asarray(xy, dtype=float) - self.origin) / self.cell).astype(int)
        return int(np.clip(ij[0], 0, self.occupied.shape[0] - 1)), int(np.clip(ij[1], 0, self.occupied.shape[1] - 1))


def occupancy_grid(cloud, exclude, z_max: float, cell: float, inflation: float, extra_xy=(), margin: float = 2.0) -> OccupancyGrid:
    """Cells whose centre lies within ``inflation`` (xy) of any point below ``z_max``."""
    keep = (cloud.points[:, 2] <= z_max) & ~np.isin(cloud.object_ids, list(exclude))
    pts = cloud.points[keep, :2]
    allxy = np.vstack([cloud.points[:, :2], *[np.asarray(p, dtype=float).reshape(1, 2) for p in extra_xy]])
    lo = allxy.min(axis=0) - margin
    hi = allxy.max(axis=0) + margin
    n = np.ceil((hi - lo) / cell).astype(int) + 1
    gx, gy = np.meshgrid(np.arange(n[0]), np.arange(n[1]), indexing="ij")
    centres = lo + cell * np.column_stack([gx.ravel(), gy.ravel()])
    if pts.shape[0]:
        d = cKDTree(pts).query(centres)[0]
        occ = (d < inflation).reshape(n[0], n[1])
    else:
        occ = np.zeros((n[0], n[1]), dtype=bool)
    return OccupancyGrid(lo, cell, occ)


def astar(grid: OccupancyGrid, start_xy, goal_xy, goal_radius: float) -> list[tuple[int, int]] | None:
    """8-connected A* to any free cell within ``goal_radius`` of ``goal_xy``.

    Ties in the open list break on (f, g, cell) so the path is deterministic.
    """
    goal = np.asarray(goal_xy, dtype=float)
    nx, ny = grid.occupied.shape

    def h(ij):
        c = grid.centre(ij)
        return max(0.0, math.hypot(c[0] - goal[0], c[1] - goal[1]) - goal_radius)

    def is_goal(ij):
        c = grid.centre(ij)
        return not grid.occupied[ij] and math.hypot(c[0] - goal[0], c[1] - goal[1]) <= goal_radius

    start = grid.cell_of(start_xy)
    g = {start: 0.0}
    parent = {start: None}
    heap = [(h(start), 0.0, start)]
    closed = set()
    while heap:
        _, gc, cur = heapq.heappop(heap)
        if cur in closed:
            continue
        closed.add(cur)
        if is_goal(cur):
            path = []
            while cur is not None:
                path.append(cur)
                cur = parent[cur]
            return path[::-1]
        for di, dj in _MOVES:
            nb = (cur[0] + di, cur[1] + dj)
            if not (0 <= nb[0] < nx and 0 <= nb[1] < ny) or nb in closed:
                continue
            step = grid.cell * (math.sqrt(2.0) if di and dj else 1.0)
            if grid.occupied[nb]:
                step += _OCCUPIED_PENALTY
            ng = gc + step
            if ng < g.get(nb, math.inf):
                g[nb] = ng
                parent[nb] = cur
                heapq.heappush(heap, (ng + h(nb), ng, nb))
    return None


def waypoints(grid: OccupancyGrid, path, start_xy, max_step: float) -> list[np.ndarray]:
    """Cell centres along ``path`` spaced at most ``max_step`` apart."""
    out = []
    here = np.asarray(start_xy, dtype=float)
    centres = [grid.centre(ij) for ij in path]
    k = 0
    while k < len(centres) - 1:
        nxt = None
        for j in range(k + 1, len(centres)):
            if np.linalg.norm(centres[j] - here) <= max_step:
                nxt = j
            else:
                break
        if nxt is None:
            break
        here = centres[nxt]
        out.append(here)
        k = nxt
    return out
