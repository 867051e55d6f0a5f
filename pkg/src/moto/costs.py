"""Per-step objective: keypoint distance plus collision, smoothness and margin costs."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from moto import kernels
from moto.config import CostWeights
from moto.errors import DomainError
from moto.geometry import wrap_angle
from moto.robot.kinematics import arm_frames, arm_radius, surface_query_points

# The target object leaves the collision set once AK is this many contact
# tolerances from TK, so the arm may actually touch it.
FINAL_APPROACH_FACTOR = 3.0


@dataclass(frozen=True)
class CostBreakdown:
    dist: float
    collision: float
    smooth: float
    margin: float
    total: float
    min_clearance: float
    radius: float = float("nan")
    final_approach: bool = False

    def to_dict(self) -> dict:
        return {
            "dist": self.dist,
            "collision": self.collision,
            "smooth": self.smooth,
            "margin": self.margin,
            "total": self.total,
            "min_clearance": self.min_clearance,
            "radius": self.radius,
            "final_approach": self.final_approach,
        }


@dataclass(frozen=True, eq=False)
class CostContext:
    """Everything fixed for one subtask's optimisation."""

    robot: object
    cloud: object
    tk: np.ndarray
    arm_index: int = 0
    offset: np.ndarray | None = None
    target_object: int | None = None
    held: frozenset = frozenset()
    weights: CostWeights = CostWeights()
    # (object id, previous TK): the object the arm is leaving, excluded
    # until AK is more than the final-approach radius away from that TK
    departure: tuple | None = None

    def exclusion(self, dist: float, ak=None) -> frozenset:
        radius = FINAL_APPROACH_FACTOR * self.weights.contact_tol
        out = self.held
        if self.target_object is not None and dist <= radius:
            out = out | {self.target_object}
        if self.departure is not None and ak is not None:
            obj, prev_tk = self.departure
            if float(np.linalg.norm(np.asarray(prev_tk) - ak)) <= radius:
                out = out | {obj}
        return out


def _ak_from_frames(F: np.ndarray, offset) -> np.ndarray:
    T = F[-1]
    if offset is None:
        return T[:3, 3]
    return T[:3, :3] @ offset + T[:3, 3]


def keypoint_distance_cost(state, ctx: CostContext) -> float:
    """||TK - AK(state)|| in meters."""
    F = arm_frames(ctx.robot, state, ctx.arm_index)
    return float(np.linalg.norm(ctx.tk - _ak_from_frames(F, ctx.offset)))


def collision_cost(state, robot, cloud, n_q: int, eps0: float, exclude=(), frames=None) -> tuple[float, float]:
    """(sum_j max(0, eps0 - D(q_j, P)), min_j D(q_j, P)) over surface query points."""
    Q = surface_query_points(robot, state, n_q, frames)
    d = cloud.nearest_distances(Q, exclude)
    return kernels.hinge_sum(np.ascontiguousarray(d), float(eps0)), float(d.min())


def smoothness_cost(prev, nxt) -> float:
    """Base pose change (yaw wrapped) plus per-arm joint-vector change."""
    if len(prev.arm_joints) != len(nxt.arm_joints):
        raise DomainError("states have different numbers of arms")
    dx = nxt.base[0] - prev.base[0]
    dy = nxt.base[1] - prev.base[1]
    dyaw = wrap_angle(nxt.base[2] - prev.base[2])
    total = math.sqrt(dx * dx + dy * dy + dyaw * dyaw)
    for a, b in zip(prev.arm_joints, nxt.arm_joints):
        if a.shape != b.shape:
            raise DomainError("arm joint vectors differ in length")
        total += float(np.linalg.norm(b - a))
    return total


def margin_cost(robot, state, arm_index: int = 0) -> float:
    """|(r_min + r_max)/2 - arm radius|."""
    arm = robot.arms[arm_index]
    return abs(arm.r_mid - arm_radius(robot, state, arm_index))


def total_cost(prev, nxt, ctx: CostContext, frames=None) -> CostBreakdown:
    w = ctx.weights
    robot = ctx.robot
    if frames is None:
        frames = [arm_frames(robot, nxt, a) for a in range(robot.n_arms)]
    F = frames[ctx.arm_index]
    ak = _ak_from_frames(F, ctx.offset)
    dist = float(np.linalg.norm(ctx.tk - ak))
    excl = ctx.exclusion(dist, ak)
    collision, clearance = collision_cost(nxt, robot, ctx.cloud, w.n_query, w.eps0, excl, frames)
    smooth = smoothness_cost(prev, nxt)
    ee = F[-1, :3, 3]
    radius = math.hypot(ee[0] - nxt.base[0], ee[1] - nxt.base[1])
    margin = abs(robot.arms[ctx.arm_index].r_mid - radius)
    total = w.w_dist * dist + w.w_collision * collision + w.w_smooth * smooth + w.w_margin * margin
    return CostBreakdown(dist, collision, smooth, margin, total, clearance, radius, ctx.target_object in excl)
