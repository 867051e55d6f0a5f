"""Robot description: holonomic SE(2) base carrying one or more serial arms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from moto.errors import DomainError
from moto.geometry import is_rigid, translation

# Radius of the capsule around each link axis used when sampling surface points.
CAPSULE_RADIUS = 0.04


@dataclass(frozen=True, eq=False)
class ArmSpec:
    """Revolute chain; joint i rotates about ``joint_axes[i]`` (parent frame),
    then link i extends ``link_lengths[i]`` along the rotated local x axis."""

    link_lengths: np.ndarray
    joint_axes: np.ndarray
    joint_limits: np.ndarray
    r_min: float
    r_max: float
    home: np.ndarray | None = None

    def __post_init__(self):
        L = np.asarray(self.link_lengths, dtype=float).reshape(-1)
        A = np.asarray(self.joint_axes, dtype=float).reshape(-1, 3)
        lim = np.asarray(self.joint_limits, dtype=float).reshape(-1, 2)
        if not (L.size == A.shape[0] == lim.shape[0]) or L.size == 0:
            raise DomainError("arm needs matching, non-empty link/axis/limit lists")
        if np.any(L <= 0):
            raise DomainError("link lengths must be positive")
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms < 1e-9):
            raise DomainError("joint axes must be non-zero")
        A = A / norms[:, None]
        if np.any(lim[:, 0] >= lim[:, 1]):
            raise DomainError("joint limits need lo < hi")
        if not (0 <= self.r_min < self.r_max <= L.sum() + 1e-12):
            raise DomainError("need 0 <= r_min < r_max <= sum(link_lengths)")
        home = np.zeros(L.size) if self.home is None else np.asarray(self.home, dtype=float).reshape(-1)
        if home.size != L.size:
            raise DomainError("home pose has wrong length")
        home = np.clip(home, lim[:, 0], lim[:, 1])
        for name, val in (("link_lengths", L), ("joint_axes", A), ("joint_limits", lim), ("home", home)):
            val = np.ascontiguousarray(val)
            val.flags.writeable = False
            object.__setattr__(self, name, val)

    @property
    def n_joints(self) -> int:
        return self.link_lengths.size

    @property
    def reach(self) -> float:
        return float(self.link_lengths.sum())

    @property
    def r_mid(self) -> float:
        return 0.5 * (self.r_min + self.r_max)


@dataclass(frozen=True, eq=False)
class RobotSpec:
    base_radius: float
    base_height: float
    arms: tuple[ArmSpec, ...]
    arm_mounts: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.base_radius > 0:
            raise DomainError("base_radius must be positive")
        if not self.base_height > 0:
            raise DomainError("base_height must be positive")
        if len(self.arms) < 1:
            raise DomainError("robot needs at least one arm")
        if len(self.arm_mounts) != len(self.arms):
            raise DomainError("one mount transform per arm")
        mounts = []
        for m in self.arm_mounts:
            m = np.ascontiguousarray(m, dtype=float)
            if not is_rigid(m):
                raise DomainError("arm mount must be a rigid 4x4 transform")
            m.flags.writeable = False
            mounts.append(m)
        object.__setattr__(self, "arm_mounts", tuple(mounts))
        object.__setattr__(self, "arms", tuple(self.arms))

    @property
    def n_arms(self) -> int:
        return len(self.arms)


def _default_arm() -> ArmSpec:
    return ArmSpec(
        link_lengths=[0.05, 0.35, 0.30, 0.15],
        joint_axes=[[0, 0, 1], [0, 1, 0], [0, 1, 0], [0, 1, 0]],
        joint_limits=[[-2.9, 2.9], [-1.7, 1.7], [-2.6, 2.6], [-2.2, 2.2]],
        r_min=0.3,
        r_max=0.7,
        home=[0.0, -1.2, 2.4, 0.8],
    )


def default_single_arm() -> RobotSpec:
    """Base r=0.25 m, h=0.8 m; 4-DOF arm (yaw + 3 pitch) on a 0.9 m mast."""
    return RobotSpec(0.25, 0.8, (_default_arm(),), (translation(0.0, 0.0, 0.9),))


def default_dual_arm() -> RobotSpec:
    """Two copies of the default arm mounted 0.18 m left and right of centre."""
    left = translation(0.0, 0.18, 0.9)
    right = translation(0.0, -0.18, 0.9)
    return RobotSpec(0.25, 0.8, (_default_arm(), _default_arm()), (left, right))


PRESETS = {
    "default_single_arm": default_single_arm,
    "default_dual_arm": default_dual_arm,
}


def preset(name: str) -> RobotSpec:
    key = name.split("/")[-1]
    if key not in PRESETS:
        raise DomainError(f"unknown robot preset {name!r}; known: {sorted(PRESETS)}")
    return PRESETS[key]()


def mount_xy_offset(spec: RobotSpec, arm_index: int) -> float:
    m = spec.arm_mounts[arm_index]
    return math.hypot(m[0, 3], m[1, 3])
