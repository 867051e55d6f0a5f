"""Robot configuration and its flat decision-vector encoding."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from moto.errors import DomainError
from moto.geometry import wrap_angle, yaw_transform


@dataclass(frozen=True, eq=False)
class RobotState:
    """Base pose (x, y, yaw) plus one joint vector per arm.

    ``gripper[a]`` is the object id held by arm ``a`` or ``None`` when empty.
    """

    base: np.ndarray
    arm_joints: tuple[np.ndarray, ...]
    gripper: tuple[int | None, ...] = ()

    def __post_init__(self):
        b = np.array(self.base, dtype=float).reshape(-1)
        if b.size != 3 or not np.all(np.isfinite(b)):
            raise DomainError("base pose must be a finite (x, y, yaw)")
        b[2] = wrap_angle(b[2])
        b.flags.writeable = False
        joints = []
        for q in self.arm_joints:
            q = np.array(q, dtype=float).reshape(-1)
            q.flags.writeable = False
            joints.append(q)
        grip = tuple(self.gripper) if self.gripper else (None,) * len(joints)
        if len(grip) != len(joints):
            raise DomainError("one gripper entry per arm")
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "arm_joints", tuple(joints))
        object.__setattr__(self, "gripper", grip)

    @property
    def transform(self) -> np.ndarray:
        """E: world <- robot."""
        x, y, yaw = self.base
        return yaw_transform(x, y, yaw)

    def vector(self) -> np.ndarray:
        return np.concatenate([self.base, *self.arm_joints])

    def with_vector(self, x: np.ndarray) -> "RobotState":
        x = np.asarray(x, dtype=float)
        joints, k = [], 3
        for q in self.arm_joints:
            joints.append(x[k:k + q.size])
            k += q.size
        return RobotState(x[:3], tuple(joints), self.gripper)

    def with_gripper(self, gripper) -> "RobotState":
        return RobotState(self.base, self.arm_joints, tuple(gripper))

    def with_arm(self, arm_index: int, q) -> "RobotState":
        joints = list(self.arm_joints)
        joints[arm_index] = np.asarray(q, dtype=float)
        return RobotState(self.base, tuple(joints), self.gripper)

    def identical(self, other: "RobotState") -> bool:
        return (
            np.array_equal(self.base, other.base)
            and len(self.arm_joints) == len(other.arm_joints)
            and all(np.array_equal(a, b) for a, b in zip(self.arm_joints, other.arm_joints))
            and self.gripper == other.gripper
        )

    def to_dict(self) -> dict:
        return {
            "base": [float(v) for v in self.base],
            "arm_joints": [[float(v) for v in q] for q in self.arm_joints],
            "gripper": list(self.gripper),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RobotState":
        return cls(d["base"], tuple(d["arm_joints"]), tuple(d.get("gripper") or ()))


def home_state(spec, base=(0.0, 0.0, 0.0)) -> RobotState:
    return RobotState(base, tuple(arm.home for arm in spec.arms))


def check_limits(spec, state: RobotState, tol: float = 1e-12) -> None:
    if len(state.arm_joints) != spec.n_arms:
        raise DomainError(f"state has {len(state.arm_joints)} arms, robot has {spec.n_arms}")
    for a, (arm, q) in enumerate(zip(spec.arms, state.arm_joints)):
        if q.size != arm.n_joints:
            raise DomainError(f"arm {a}: expected {arm.n_joints} joints, got {q.size}")
        lim = arm.joint_limits
        if np.any(q < lim[:, 0] - tol) or np.any(q > lim[:, 1] + tol):
            raise DomainError(f"arm {a}: joints outside limits")


def move_base(state: RobotState, dx: float, dy: float, dyaw: float) -> RobotState:
    """Compose a planar world motion g = (dx, dy, dyaw) with the base pose."""
    g = yaw_transform(dx, dy, dyaw)
    x, y, yaw = state.base
    p = g[:2, :2] @ np.array([x, y]) + g[:2, 3]
    return RobotState((p[0], p[1], yaw + dyaw), state.arm_joints, state.gripper)
