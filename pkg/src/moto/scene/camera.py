"""Pinhole camera views and synthetic depth rendering by point splatting."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from moto.errors import DomainError, NoDepthError
from moto.geometry import invert

# Half-width of the square pixel footprint a point splats into, in pixels.
RENDER_EPS = 0.5
BACKGROUND = -1


@dataclass(frozen=True, eq=False)
class CameraView:
    """A camera pose plus (optionally) its depth and label images.

    ``extrinsics`` maps world to camera coordinates. ``depth`` is
    camera-frame z per pixel, NaN on background; ``pixel_labels`` is
    (height, width, 2) of (object_id, part_id), -1 on background.
    Pixel (u, v) is column u, row v; pixel centres sit at integers.
    """

    view_id: str
    intrinsics: tuple[float, float, float, float]
    extrinsics: np.ndarray
    width: int
    height: int
    depth: np.ndarray | None = None
    pixel_labels: np.ndarray | None = None

    def __post_init__(self):
        fx, fy, cx, cy = self.intrinsics
        if not (fx > 0 and fy > 0):
            raise DomainError(f"view {self.view_id}: focal lengths must be positive")
        if self.width > 0 and self.height > 0 and not (0 <= cx < self.width and 0 <= cy < self.height):
            raise DomainError(f"view {self.view_id}: principal point outside image")

    @property
    def world_from_camera(self) -> np.ndarray:
        return invert(self.extrinsics)

    @property
    def rendered(self) -> bool:
        return self.depth is not None

    def project(self, points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Continuous pixel coordinates (u, v) and camera depth z of world points."""
        P = np.asarray(points, dtype=float).reshape(-1, 3)
        C = P @ self.extrinsics[:3, :3].T + self.extrinsics[:3, 3]
        fx, fy, cx, cy = self.intrinsics
        z = C[:, 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = fx * C[:, 0] / z + cx
            v = fy * C[:, 1] / z + cy
        return u, v, z

    def backproject(self, pixel, depth: float) -> np.ndarray:
        """World point seen at ``pixel`` with camera depth ``depth``."""
        u, v = float(pixel[0]), float(pixel[1])
        if not (0 <= u <= self.width - 1 and 0 <= v <= self.height - 1):
            raise DomainError(f"pixel {pixel} outside {self.width}x{self.height} view")
        if not (np.isfinite(depth) and depth > 0):
            raise NoDepthError(f"view {self.view_id}: no depth at pixel {pixel}")
        fx, fy, cx, cy = self.intrinsics
        c = np.array([(u - cx) * depth / fx, (v - cy) * depth / fy, depth])
        W = self.world_from_camera
        return W[:3, :3] @ c + W[:3, 3]

    def depth_at(self, pixel) -> float:
        if self.depth is None:
            raise NoDepthError(f"view {self.view_id} has no depth image")
        return float(self.depth[int(pixel[1]), int(pixel[0])])


def render_depth(view: CameraView, cloud) -> CameraView:
    """Fill ``depth`` and ``pixel_labels`` by z-min splatting of the cloud.

    Each point in front of the camera lands in the pixel whose centre is
    within RENDER_EPS of its projection; the nearest point wins, ties go
    to the lower point index.
    """
    if view.width <= 0 or view.height <= 0:
        raise DomainError(f"view {view.view_id}: zero resolution")
    if not np.all(np.isfinite(view.extrinsics)):
        raise DomainError(f"view {view.view_id}: non-finite pose")
    if len(cloud) == 0:
        raise DomainError("scene is empty")
    u, v, z = view.project(cloud.points)
    front = z > 0
    col = np.floor(u + RENDER_EPS)
    row = np.floor(v + RENDER_EPS)
    ok = front & np.isfinite(col) & np.isfinite(row)
    ok &= (col >= 0) & (col < view.width) & (row >= 0) & (row < view.height)
    idx = np.flatnonzero(ok)
    depth = np.full((view.height, view.width), np.nan)
    labels = np.full((view.height, view.width, 2), BACKGROUND, dtype=np.int64)
    if idx.size:
        flat = row[idx].astype(np.int64) * view.width + col[idx].astype(np.int64)
        order = np.lexsort((idx, z[idx], flat))
        flat_sorted = flat[order]
        first = np.ones(order.size, dtype=bool)
        first[1:] = flat_sorted[1:] != flat_sorted[:-1]
        win = idx[order[first]]
        pix = flat_sorted[first]
        depth.reshape(-1)[pix] = z[win]
        lab = labels.reshape(-1, 2)
        lab[pix, 0] = cloud.object_ids[win]
        lab[pix, 1] = cloud.part_ids[win]
    depth.flags.writeable = False
    labels.flags.writeable = False
    return replace(view, depth=depth, pixel_labels=labels)
