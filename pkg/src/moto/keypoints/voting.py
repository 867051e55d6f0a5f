"""Backprojection and multi-view voting for the target keypoint."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from moto import kernels
from moto.errors import DomainError, NoConsensusError, NoDepthError

TARGET = "target"
ARM = "arm"


@dataclass(frozen=True, eq=False)
class Keypoint3D:
    position: np.ndarray
    kind: str
    source: dict = field(default_factory=dict)


def backproject(view, pixel, depth: float | None = None) -> np.ndarray:
    """World point at ``pixel``; depth defaults to the view's depth image."""
    u, v = pixel
    if not (0 <= u < view.width and 0 <= v < view.height):
        raise DomainError(f"pixel {pixel} outside view {view.view_id}")
    if depth is None:
        depth = view.depth_at(pixel)
    if not np.isfinite(depth):
        raise NoDepthError(f"view {view.view_id}: background pixel {pixel}")
    return view.backproject(pixel, depth)


def vote_counts(voters, cloud_points, tau: float) -> np.ndarray:
    """Per scene point, number of voters strictly closer than tau."""
    V = np.ascontiguousarray(voters, dtype=np.float64).reshape(-1, 3)
    P = np.ascontiguousarray(cloud_points, dtype=np.float64).reshape(-1, 3)
    return kernels.vote_counts(P, V, float(tau))


def vote_target_keypoint(voters, cloud, tau: float, candidates=None) -> Keypoint3D:
    """Scene point with the most voters within tau; ties go to the lowest index.

    ``candidates`` optionally restricts the search to a subset of point
    indices (e.g. the target object's points).
    """
    V = np.asarray(voters, dtype=np.float64).reshape(-1, 3)
    if V.shape[0] == 0:
        raise DomainError("no voters")
    if not tau > 0:
        raise DomainError("tau must be positive")
    points = cloud.points if hasattr(cloud, "points") else np.asarray(cloud, dtype=np.float64)
    idx = np.arange(points.shape[0]) if candidates is None else np.sort(np.asarray(candidates, dtype=np.int64))
    counts = vote_counts(V, points[idx], tau)
    best = int(np.argmax(counts))
    if counts[best] == 0:
        raise NoConsensusError(f"no scene point within tau={tau} of any of {V.shape[0]} voters")
    i = int(idx[best])
    nz = np.flatnonzero(counts)
    return Keypoint3D(
        points[i].copy(),
        TARGET,
        {
            "index": i,
            "votes": int(counts[best]),
            "tau": float(tau),
            "n_voters": int(V.shape[0]),
            "counts": {int(idx[j]): int(counts[j]) for j in nz},
        },
    )
