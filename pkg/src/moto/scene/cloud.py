"""Labeled world-frame point cloud with a static nearest-neighbour index."""
from __future__ import annotations

from typing import Iterable

import numpy as np
from scipy.spatial import cKDTree

from moto.errors import DomainError


class ScenePointCloud:
    """Immutable scene points P with per-point (object_id, part_id) labels.

    The KD index over all points is built once; indices that leave out
    whole objects (held objects, the target during final approach) are
    built on first use and cached.
    """

    def __init__(self, points, object_ids, part_ids):
        pts = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 3)
        if pts.shape[0] < 1:
            raise DomainError("point cloud must contain at least one point")
        if not np.all(np.isfinite(pts)):
            raise DomainError("point cloud coordinates must be finite")
        obj = np.asarray(object_ids, dtype=np.int64).reshape(-1)
        part = np.asarray(part_ids, dtype=np.int64).reshape(-1)
        if obj.shape[0] != pts.shape[0] or part.shape[0] != pts.shape[0]:
            raise DomainError("label arrays must have one entry per point")
        for a in (pts, obj, part):
            a.flags.writeable = False
        self.points = pts
        self.object_ids = obj
        self.part_ids = part
        self._tree = cKDTree(pts)
        self._subsets: dict[frozenset, tuple[cKDTree | None, np.ndarray]] = {}

    def __len__(self) -> int:
        return self.points.shape[0]

    def object_indices(self, object_id: int) -> np.ndarray:
        return np.flatnonzero(self.object_ids == object_id)

    def _index(self, exclude: frozenset):
        if not exclude:
            return self._tree, None
        hit = self._subsets.get(exclude)
        if hit is None:
            keep = np.flatnonzero(~np.isin(self.object_ids, list(exclude)))
            tree = cKDTree(self.points[keep]) if keep.size else None
            hit = (tree, keep)
            self._subsets[exclude] = hit
        return hit

    def nearest_distance(self, q, exclude: Iterable[int] = ()) -> float:
        """Euclidean distance from ``q`` to the closest scene point."""
        q = np.asarray(q, dtype=np.float64)
        if q.shape != (3,) or not np.all(np.isfinite(q)):
            raise DomainError(f"query must be a finite 3-vector, got {q!r}")
        return float(self.nearest_distances(q[None, :], exclude)[0])

    def nearest_distances(self, queries, exclude: Iterable[int] = ()) -> np.ndarray:
        Q = np.asarray(queries, dtype=np.float64).reshape(-1, 3)
        if not np.all(np.isfinite(Q)):
            raise DomainError("queries must be finite")
        tree, _ = self._index(frozenset(exclude))
        if tree is None:
            return np.full(Q.shape[0], np.inf)
        return tree.query(Q)[0]

    def nearest_index(self, q, exclude: Iterable[int] = ()) -> int:
        tree, keep = self._index(frozenset(exclude))
        if tree is None:
            raise DomainError("no points remain after exclusion")
        i = int(tree.query(np.asarray(q, dtype=np.float64))[1])
        return i if keep is None else int(keep[i])

    def same_as(self, other: "ScenePointCloud") -> bool:
        return (
            np.array_equal(self.points, other.points)
            and np.array_equal(self.object_ids, other.object_ids)
            and np.array_equal(self.part_ids, other.part_ids)
        )
