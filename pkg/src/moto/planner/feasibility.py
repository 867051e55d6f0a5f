"""Exhaustive base-grid search for a docking pose (independent of the annealer).

For every base position on a regular grid around TK the base faces TK,
IK solves the chosen arm onto TK from its home pose, and the result is
accepted when it is collision-free (with the final-approach exclusion),
in contact, and its arm radius lies in [r_min, r_max].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from moto.costs import CostContext, total_cost
from moto.errors import UnreachableTargetError
from moto.optimizer.trajectory import reached
from moto.robot.kinematics import forward_kinematics, inverse_kinematics
from moto.robot.spec import mount_xy_offset
from moto.robot.state import RobotState


@dataclass
class FeasibilityReport:
    feasible: bool
    checked: int
    solutions: list = field(default_factory=list)  # RobotStates that dock

    @property
    def first(self) -> RobotState | None:
        return self.solutions[0] if self.solutions else None


def _ik_on_offset(robot, tk, state, arm, offset, rounds=4):
    """IK for the contact point EE*offset by fixed-point iteration on the EE target."""
    target = tk
    q = inverse_kinematics(robot, target, state, arm)
    if offset is None:
        return q
    for _ in range(rounds):
        T = forward_kinematics(robot, state.with_arm(arm, q), arm)
        target = tk - T[:3, :3] @ offset
        q = inverse_kinematics(robot, target, state.with_arm(arm, q), arm)
    return q


def grid_docking_search(
    ctx: CostContext,
    template: RobotState,
    spacing: float = 0.05,
    stop_at_first: bool = True,
    collision_cap: float = 0.0,
) -> FeasibilityReport:
    """Scan base positions ``spacing`` apart on a square around TK.

    ``template`` supplies the gripper contents and the joints of arms
    other than ``ctx.arm_index``; the chosen arm starts IK at home.
    """
    robot = ctx.robot
    a = ctx.arm_index
    arm = robot.arms[a]
    tk = np.asarray(ctx.tk, dtype=float)
    mo = mount_xy_offset(robot, a)
    r_lo = max(0.0, arm.r_min - mo - spacing)
    r_hi = arm.r_max + mo + spacing
    n = int(math.ceil(r_hi / spacing))
    # snap the grid to multiples of spacing so it does not depend on TK
    cx, cy = round(tk[0] / spacing), round(tk[1] / spacing)
    cells = []
    for i in range(cx - n, cx + n + 1):
        for j in range(cy - n, cy + n + 1):
            x, y = i * spacing, j * spacing
            r = math.hypot(x - tk[0], y - tk[1])
            if r_lo <= r <= r_hi:
                cells.append((r, x, y))
    # closest to the mid radius first: the likeliest docking ring
    cells.sort(key=lambda c: (abs(c[0] - arm.r_mid), c[1], c[2]))
    report = FeasibilityReport(False, 0)
    for _, x, y in cells:
        yaw = math.atan2(tk[1] - y, tk[0] - x)
        s = RobotState((x, y, yaw), template.arm_joints, template.gripper).with_arm(a, arm.home)
        report.checked += 1
        try:
            q = _ik_on_offset(robot, tk, s, a, ctx.offset)
        except UnreachableTargetError:
            continue
        s = s.with_arm(a, q)
        b = total_cost(s, s, ctx)
        if reached(b, ctx, collision_cap):
            report.feasible = True
            report.solutions.append(s)
            if stop_at_first:
                break
    return report
