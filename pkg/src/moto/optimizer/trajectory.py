"""Sequential per-step optimisation into an executable trajectory."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from moto.config import RunConfig
from moto.costs import CostBreakdown, CostContext, total_cost
from moto.errors import StepInfeasibleError
from moto.geometry import wrap_angle
from moto.optimizer.anneal import StepResult, anneal_step
from moto.optimizer.navigation import astar, occupancy_grid, waypoints
from moto.robot.state import RobotState

CONTACT = "contact"
TIMEOUT = "timeout"
STALLED = "stalled"
INFEASIBLE = "infeasible"

# Consecutive steps without total-cost progress before giving up early.
_STALL_STEPS = 6
_STALL_TOL = 1e-6


@dataclass
class Trajectory:
    states: list[RobotState]
    breakdowns: list[CostBreakdown]
    actions: list[np.ndarray] = field(default_factory=list)
    phases: list[str] = field(default_factory=list)
    steps: list[StepResult] = field(default_factory=list)
    status: str = TIMEOUT
    restarts: int = 0
    evals: int = 0

    @property
    def final(self) -> RobotState:
        return self.states[-1]

    @property
    def final_breakdown(self) -> CostBreakdown:
        return self.breakdowns[-1]

    @property
    def min_clearance(self) -> float:
        return min(b.min_clearance for b in self.breakdowns)

    def __len__(self) -> int:
        return len(self.states)

    def extend(self, other: "Trajectory") -> None:
        """Append ``other``, whose first state must equal our last."""
        assert other.states[0].identical(self.states[-1])
        self.states += other.states[1:]
        self.breakdowns += other.breakdowns[1:]
        self.actions += other.actions
        self.phases += other.phases
        self.steps += other.steps
        self.status = other.status
        self.restarts += other.restarts
        self.evals += other.evals


def action_between(prev: RobotState, nxt: RobotState) -> np.ndarray:
    """a_t = delta theta_t (yaw difference wrapped)."""
    a = nxt.vector() - prev.vector()
    a[2] = wrap_angle(a[2])
    return a


def apply_action(state: RobotState, action, robot) -> RobotState:
    """state + action with yaw wrapped and joints clamped to their limits."""
    x = state.vector() + np.asarray(action, dtype=float)
    k = 3
    for arm in robot.arms:
        n = arm.n_joints
        x[k:k + n] = np.minimum(np.maximum(x[k:k + n], arm.joint_limits[:, 0]), arm.joint_limits[:, 1])
        k += n
    return state.with_vector(x)


def reached(b: CostBreakdown, ctx: CostContext, collision_cap: float = 0.0) -> bool:
    """Docking predicate: contact, collision-free, arm radius within its margin band."""
    arm = ctx.robot.arms[ctx.arm_index]
    return (
        b.dist <= ctx.weights.contact_tol
        and b.collision <= collision_cap
        and arm.r_min <= b.radius <= arm.r_max
    )


class _Evaluator:
    """Ordered batch evaluation, optionally across threads."""

    def __init__(self, jobs: int = 1):
        self.jobs = jobs
        self._pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None

    def __call__(self, objective, xs):
        if self._pool is None:
            return [objective(x) for x in xs]
        return list(self._pool.map(objective, xs))

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()


def _rng_factory(seed: int, key: tuple):
    def make(restart: int):
        return np.random.default_rng(np.random.SeedSequence([seed, *key, restart]))

    return make


def _commit(traj: Trajectory, target: RobotState, ctx: CostContext, robot, phase: str) -> CostBreakdown:
    prev = traj.states[-1]
    a = action_between(prev, target)
    s = apply_action(prev, a, robot)
    b = total_cost(prev, s, ctx)
    traj.states.append(s)
    traj.breakdowns.append(b)
    traj.actions.append(a)
    traj.phases.append(phase)
    return b


def navigate(start: RobotState, ctx: CostContext, config: RunConfig, force: bool = False) -> Trajectory:
    """A* prefix toward TK when it is farther than ``nav_trigger`` (xy).

    Base moves between cell centres at most ``base_step_cap`` apart with
    yaw and arms fixed; the prefix stops at the first waypoint that would
    violate the collision cap. ``force`` plans regardless of distance
    (used to leave a local minimum).
    """
    b0 = total_cost(start, start, ctx)
    traj = Trajectory([start], [b0])
    pc = config.planner
    tk_xy = ctx.tk[:2]
    if not force and math.hypot(*(start.base[:2] - tk_xy)) <= pc.nav_trigger:
        return traj
    robot = ctx.robot
    w = ctx.weights
    inflation = robot.base_radius + w.eps0 + 0.5 * pc.grid_cell
    grid = occupancy_grid(ctx.cloud, ctx.held, robot.base_height, pc.grid_cell, inflation, extra_xy=[start.base[:2]])
    path = astar(grid, start.base[:2], tk_xy, pc.nav_goal_radius)
    if path is None:
        return traj
    for xy in waypoints(grid, path, start.base[:2], config.anneal.base_step_cap):
        prev = traj.states[-1]
        cand = RobotState((xy[0], xy[1], prev.base[2]), prev.arm_joints, prev.gripper)
        b = total_cost(prev, cand, ctx)
        if b.collision > config.anneal.collision_cap:
            break
        _commit(traj, cand, ctx, robot, "nav")
    return traj


def optimize_trajectory(
    start: RobotState,
    ctx: CostContext,
    config: RunConfig,
    T_max: int | None = None,
    seed_key: tuple = (),
    jobs: int = 1,
) -> Trajectory:
    """Anneal one step at a time from ``start`` until docking or T_max steps.

    Each accepted step is re-expressed as an action and re-applied, so
    replaying the actions from ``start`` reproduces every state exactly.
    """
    T_max = config.planner.T_max if T_max is None else T_max
    robot = ctx.robot
    ac = config.anneal
    b0 = total_cost(start, start, ctx)
    traj = Trajectory([start], [b0], evals=1)
    if reached(b0, ctx, ac.collision_cap):
        traj.status = CONTACT
        return traj
    evaluator = _Evaluator(jobs)
    still = 0
    try:
        for t in range(1, T_max + 1):
            prev_total = traj.breakdowns[-1]
            try:
                res = anneal_step(traj.states[-1], ctx, ac, _rng_factory(ac.seed, (*seed_key, t)), evaluator)
            except StepInfeasibleError:
                traj.status = INFEASIBLE
                return traj
            traj.steps.append(res)
            traj.restarts += res.restarts
            traj.evals += res.evals + 1
            b = _commit(traj, res.state, ctx, robot, "anneal")
            if reached(b, ctx, ac.collision_cap):
                traj.status = CONTACT
                return traj
            # progress is measured without the smoothness term of the step itself
            base_now = b.total - ctx.weights.w_smooth * b.smooth
            base_before = prev_total.total - ctx.weights.w_smooth * prev_total.smooth
            still = still + 1 if base_before - base_now < _STALL_TOL else 0
            if still >= _STALL_STEPS:
                traj.status = STALLED
                return traj
        traj.status = TIMEOUT
        return traj
    finally:
        evaluator.close()
