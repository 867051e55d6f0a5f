"""Forward/inverse kinematics, arm radius and surface query points."""
from __future__ import annotations

import math

import numpy as np

from moto import kernels
from moto.errors import DomainError, UnreachableTargetError
from moto.robot.spec import CAPSULE_RADIUS, RobotSpec
from moto.robot.state import RobotState

TOL_IK = 1e-4
MAX_IK_ITERS = 200
IK_DAMPING = 0.05
IK_STEP_CLAMP = 0.2

_GOLDEN = math.pi * (3.0 - math.sqrt(5.0))


def _check_arm(spec: RobotSpec, arm_index: int) -> None:
    if not 0 <= arm_index < spec.n_arms:
        raise DomainError(f"arm index {arm_index} out of range for {spec.n_arms}-arm robot")


def arm_frames(spec: RobotSpec, state: RobotState, arm_index: int, local: bool = False) -> np.ndarray:
    """(n+1, 4, 4) joint frames of one arm; frame 0 is the shoulder, -1 the end effector.

    World frame by default; ``local=True`` gives them in the robot frame.
    """
    _check_arm(spec, arm_index)
    arm = spec.arms[arm_index]
    mount = spec.arm_mounts[arm_index]
    root = mount if local else state.transform @ mount
    q = np.ascontiguousarray(state.arm_joints[arm_index], dtype=np.float64)
    if q.size != arm.n_joints:
        raise DomainError(f"arm {arm_index}: expected {arm.n_joints} joints, got {q.size}")
    return kernels.chain_fk(np.ascontiguousarray(root), arm.joint_axes, arm.link_lengths, q)


def forward_kinematics(spec: RobotSpec, state: RobotState, arm_index: int = 0) -> np.ndarray:
    """World-frame 4x4 end-effector pose."""
    return arm_frames(spec, state, arm_index)[-1]


def end_effector(spec: RobotSpec, state: RobotState, arm_index: int = 0) -> np.ndarray:
    return forward_kinematics(spec, state, arm_index)[:3, 3].copy()


def arm_radius(spec: RobotSpec, state: RobotState, arm_index: int = 0) -> float:
    """Horizontal distance from the base centre to the end effector."""
    p = forward_kinematics(spec, state, arm_index)[:3, 3]
    return math.hypot(p[0] - state.base[0], p[1] - state.base[1])


def position_jacobian(frames: np.ndarray, axes: np.ndarray) -> np.ndarray:
    """3 x n Jacobian of the end-effector position for a revolute chain."""
    p_ee = frames[-1, :3, 3]
    n = axes.shape[0]
    J = np.empty((3, n))
    for i in range(n):
        w = frames[i, :3, :3] @ axes[i]
        J[:, i] = np.cross(w, p_ee - frames[i, :3, 3])
    return J


def inverse_kinematics(
    spec: RobotSpec,
    target,
    state0: RobotState,
    arm_index: int = 0,
    *,
    tol: float = TOL_IK,
    max_iters: int = MAX_IK_ITERS,
    damping: float = IK_DAMPING,
    step_clamp: float = IK_STEP_CLAMP,
) -> np.ndarray:
    """Position-only damped least squares IK with joint-limit projection.

    ``target`` is a world 3-vector or a 4x4 pose (only its translation is
    used). Returns the joint vector; raises UnreachableTargetError with the
    best residual when it does not converge.
    """
    _check_arm(spec, arm_index)
    t = np.asarray(target, dtype=float)
    if t.shape == (4, 4):
        t = t[:3, 3]
    t = t.reshape(-1)
    if t.size != 3 or not np.all(np.isfinite(t)):
        raise DomainError("IK target must be a finite 3D point or 4x4 pose")
    arm = spec.arms[arm_index]
    lo, hi = arm.joint_limits[:, 0], arm.joint_limits[:, 1]
    q = np.clip(np.array(state0.arm_joints[arm_index], dtype=float), lo, hi)
    root = np.ascontiguousarray(state0.transform @ spec.arm_mounts[arm_index])

    def frames_of(qv):
        return kernels.chain_fk(root, arm.joint_axes, arm.link_lengths, np.ascontiguousarray(qv))

    F = frames_of(q)
    err = t - F[-1, :3, 3]
    res = float(np.linalg.norm(err))
    best_q, best_res = q.copy(), res
    if res <= tol:
        return q
    if np.linalg.norm(t - root[:3, 3]) > arm.reach:
        raise UnreachableTargetError(res, q, 0)
    lam2 = damping * damping
    eye3 = np.eye(3)
    seeds = [q, arm.home, 0.5 * (lo + hi), _mirror(q, lo, hi)]
    used = 0
    for seed in seeds:
        q = np.clip(_align_first_joint(arm, root, np.array(seed, dtype=float), t), lo, hi)
        F = frames_of(q)
        err = t - F[-1, :3, 3]
        res = float(np.linalg.norm(err))
        window_best, since = res, 0
        while used < max_iters:
            used += 1
            J = position_jacobian(F, arm.joint_axes)
            dq = J.T @ np.linalg.solve(J @ J.T + lam2 * eye3, err)
            m = np.max(np.abs(dq))
            if m > step_clamp:
                dq *= step_clamp / m
            q = np.clip(q + dq, lo, hi)
            F = frames_of(q)
            err = t - F[-1, :3, 3]
            res = float(np.linalg.norm(err))
            if res < best_res:
                best_q, best_res = q.copy(), res
            if res <= tol:
                return q
            if res < 0.99 * window_best:
                window_best, since = res, 0
            else:
                since += 1
                if since >= _STALL_ITERS:
                    break
        if used >= max_iters:
            break
    raise UnreachableTargetError(best_res, best_q, used)


# Iterations without 1% residual improvement before switching seeds.
_STALL_ITERS = 12


def _mirror(q, lo, hi):
    """Elbow-flipped guess: negate every joint after the first."""
    m = np.array(q, dtype=float)
    m[1:] = -m[1:]
    return np.clip(m, lo, hi)


def _align_first_joint(arm, root, q, target):
    """Point a yaw first joint (axis +-z of the shoulder frame) at the target.

    Without this, DLS stalls whenever the target lies behind the arm.
    """
    ax = arm.joint_axes[0]
    if abs(abs(ax[2]) - 1.0) > 1e-9:
        return q
    rel = root[:3, :3].T @ (target - root[:3, 3])
    if math.hypot(rel[0], rel[1]) < 1e-9:
        return q
    q[0] = math.copysign(1.0, ax[2]) * math.atan2(rel[1], rel[0])
    return q


class _SampleLayout:
    """Per-(robot, N_q) sampling pattern; positions are recomputed per state."""

    def __init__(self, spec: RobotSpec, n_q: int):
        self.n_base = -(-n_q // 2)
        k = np.arange(self.n_base)
        heights = spec.base_height * np.array([0.15, 0.5, 0.95])
        ang = 2.0 * math.pi * k / self.n_base
        self.base_local = np.column_stack(
            [spec.base_radius * np.cos(ang), spec.base_radius * np.sin(ang), heights[k % 3]]
        )
        n_arm = n_q - self.n_base
        per, rem = divmod(n_arm, spec.n_arms)
        self.arms = []
        for a, arm in enumerate(spec.arms):
            m = per + (1 if a < rem else 0)
            if m == 0:
                self.arms.append(None)
                continue
            cum = np.concatenate([[0.0], np.cumsum(arm.link_lengths)])
            s = (np.arange(m) + 0.5) / m * cum[-1]
            link = np.minimum(np.searchsorted(cum, s, side="right") - 1, arm.n_joints - 1)
            frac = (s - cum[link]) / arm.link_lengths[link]
            phi = np.arange(m) * _GOLDEN
            self.arms.append((link, frac, np.cos(phi), np.sin(phi)))


_layouts: dict[tuple[int, int], _SampleLayout] = {}


def _layout(spec: RobotSpec, n_q: int) -> _SampleLayout:
    key = (id(spec), n_q)
    lay = _layouts.get(key)
    if lay is None or lay.spec_ref is not spec:
        lay = _SampleLayout(spec, n_q)
        lay.spec_ref = spec
        _layouts[key] = lay
    return lay


def surface_query_points(spec: RobotSpec, state: RobotState, n_q: int = 64, frames=None) -> np.ndarray:
    """(n_q, 3) world points on the robot surface.

    ceil(n_q/2) points lie on the base cylinder wall, cycling through three
    heights; the rest are spread evenly along each arm's chain and pushed
    CAPSULE_RADIUS off the link axis at golden-angle azimuths. ``frames``
    may carry precomputed world ``arm_frames`` per arm.
    """
    if n_q < 3:
        raise DomainError("need at least 3 query points")
    lay = _layout(spec, n_q)
    E = state.transform
    out = [lay.base_local @ E[:3, :3].T + E[:3, 3]]
    for a, pattern in enumerate(lay.arms):
        if pattern is None:
            continue
        link, frac, cphi, sphi = pattern
        F = arm_frames(spec, state, a) if frames is None else frames[a]
        p0 = F[link, :3, 3]
        p1 = F[link + 1, :3, 3]
        axis_pts = p0 + frac[:, None] * (p1 - p0)
        ey = F[link + 1, :3, 1]
        ez = F[link + 1, :3, 2]
        out.append(axis_pts + CAPSULE_RADIUS * (cphi[:, None] * ey + sphi[:, None] * ez))
    return np.concatenate(out, axis=0)
