"""Dual annealing: Cauchy visits, Metropolis acceptance, geometric cooling,
and periodic local descent on the incumbent.

The core works on flat vectors through an ``objective(x) -> (cost,
feasible, payload)`` callable so it can be checked on closed-form test
functions; ``anneal_step`` binds it to one robot trajectory step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from moto.config import AnnealConfig
from moto.costs import CostBreakdown, CostContext, total_cost
from moto.errors import StepInfeasibleError
from moto.geometry import wrap_angle
from moto.robot.state import RobotState

Objective = Callable[[np.ndarray], tuple]

# Uniform draws are kept this far from 0 and 1 so tan() stays finite.
_U_EDGE = 1e-12


@dataclass
class AnnealResult:
    x: np.ndarray | None
    cost: float
    payload: object
    evals: int
    accepted: int
    trace: list[float]
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.x is not None


def cauchy_visit(x, scale, temp: float, T0: float, rng: np.random.Generator) -> np.ndarray:
    u = rng.random(x.shape[0])
    u = np.clip(u, _U_EDGE, 1.0 - _U_EDGE)
    return x + np.asarray(scale) * (temp / T0) * np.tan(math.pi * (u - 0.5))


def _polish(objective, x, fx, project, step, fd_step, rounds=2, halvings=5):
    """Local descent on the incumbent; returns (x, fx, payload, evals, improved).

    A forward-difference gradient step with backtracking first; when that
    finds nothing (typically the gradient points into an active collision
    margin) a compass search along each coordinate takes over, which can
    slide along the feasible boundary.
    """
    evals = 0
    payload = None
    improved = False
    n = x.shape[0]
    for _ in range(rounds):
        g = np.empty(n)
        for i in range(n):
            xi = x.copy()
            xi[i] += fd_step
            g[i] = (objective(xi)[0] - fx) / fd_step
            evals += 1
        gn = float(np.linalg.norm(g))
        moved = False
        if np.isfinite(gn) and gn > 0.0:
            direction = -g / gn
            alpha = step
            for _ in range(halvings):
                cand = project(x + alpha * direction)
                c, feas, pl = objective(cand)
                evals += 1
                if feas and c < fx:
                    x, fx, payload, moved, improved = cand, c, pl, True, True
                    break
                alpha *= 0.5
        if not moved:
            alpha = 0.25 * step
            for _ in range(3):
                for i in range(n):
                    for sgn in (-1.0, 1.0):
                        cand = x.copy()
                        cand[i] += sgn * alpha
                        cand = project(cand)
                        c, feas, pl = objective(cand)
                        evals += 1
                        if feas and c < fx:
                            x, fx, payload, moved, improved = cand, c, pl, True, True
                if moved:
                    break
                alpha *= 0.25
        if not moved:
            break
    return x, fx, payload, evals, improved


def dual_anneal(
    objective: Objective,
    x0,
    config: AnnealConfig,
    rng: np.random.Generator,
    *,
    visit_scale,
    project: Callable[[np.ndarray], np.ndarray] | None = None,
    initial: Sequence[np.ndarray] | None = None,
    evaluate_many: Callable[[list], list] | None = None,
    polish_step: float | None = None,
    fd_step: float = 1e-5,
    max_evals: int | None = None,
    f_floor: float = 0.0,
) -> AnnealResult:
    """Minimise ``objective`` from ``x0``.

    ``x0`` is evaluated first and competes for the incumbent. Then K
    initial visits at T0 (or ``initial`` if given) are evaluated and the
    best becomes the walker. Each iteration visits once from the walker,
    accepts by Metropolis, cools, re-anneals to T0 when the temperature
    falls below ``reanneal_ratio * T0``, and every ``polish_every``
    iterations runs a short local descent on the incumbent. The search
    stops when the incumbent improved by less than ``eps_stop`` over the
    last ``stop_window`` iterations, at ``max_iters``, or at ``max_evals``.
    Only feasible points become the incumbent. Reaching ``f_floor`` (a
    known lower bound; robot costs are non-negative) ends the search.
    """
    project = project or (lambda v: v)
    evaluate_many = evaluate_many or (lambda xs: [objective(v) for v in xs])
    scale = np.asarray(visit_scale, dtype=float)
    if polish_step is None:
        polish_step = float(np.max(scale))
    T0 = config.T0
    x0 = project(np.asarray(x0, dtype=float))

    best_x, best_f, best_pl = None, math.inf, None
    c0, feas0, pl0 = objective(x0)
    evals = 1
    if feas0:
        best_x, best_f, best_pl = x0, c0, pl0
    if initial is None:
        initial = [project(cauchy_visit(x0, scale, T0, T0, rng)) for _ in range(config.K)]
    results = evaluate_many(list(initial))
    evals += len(results)
    cur_x, cur_f = x0, c0
    for xi, (ci, fi, pi) in zip(initial, results):
        if fi and ci < best_f:
            best_x, best_f, best_pl = xi, ci, pi
        if ci < cur_f:
            cur_x, cur_f = xi, ci
    if best_x is not None and cur_f < best_f:
        # walker climbs out of infeasible space from the incumbent
        cur_x, cur_f = best_x, best_f
    trace = [best_f]
    accepted = 0
    it = 0
    if best_x is not None and best_f <= f_floor:
        return AnnealResult(best_x, best_f, best_pl, evals, accepted, trace, it)

    temp = T0
    budget = math.inf if max_evals is None else max_evals
    while it < config.max_iters and evals < budget:
        it += 1
        cand = project(cauchy_visit(cur_x, scale, temp, T0, rng))
        c, feas, pl = objective(cand)
        evals += 1
        delta = c - cur_f
        r = rng.random()
        if delta < 0 or r < math.exp(-delta / temp):
            cur_x, cur_f = cand, c
            accepted += 1
        if feas and c < best_f:
            best_x, best_f, best_pl = cand, c, pl
        temp *= config.cooling
        if temp < T0 * config.reanneal_ratio:
            temp = T0
        if config.polish_every and it % config.polish_every == 0 and best_x is not None:
            px, pf, ppl, pe, improved = _polish(objective, best_x, best_f, project, polish_step, fd_step)
            evals += pe
            if improved:
                best_x, best_f, best_pl = px, pf, ppl
                cur_x, cur_f = px, pf
        trace.append(best_f)
        if best_f <= f_floor:
            break
        if it >= config.stop_window and trace[-1 - config.stop_window] - trace[-1] < config.eps_stop:
            break
    return AnnealResult(best_x, best_f, best_pl, evals, accepted, trace, it)


# -- robot binding -----------------------------------------------------------


@dataclass
class StepResult:
    state: RobotState
    breakdown: CostBreakdown
    evals: int
    accepted_moves: int
    best_cost_trace: list[float]
    restarts: int = 0
    iterations: int = 0


@dataclass(frozen=True, eq=False)
class StepBox:
    """Per-step search box around the step's start state."""

    origin: np.ndarray
    joint_lo: np.ndarray
    joint_hi: np.ndarray
    base_cap: float
    yaw_cap: float

    @classmethod
    def around(cls, state: RobotState, robot, config: AnnealConfig) -> "StepBox":
        origin = state.vector()
        lo, hi = [], []
        for arm, q in zip(robot.arms, state.arm_joints):
            lo.append(np.maximum(arm.joint_limits[:, 0], q - config.joint_step_cap))
            hi.append(np.minimum(arm.joint_limits[:, 1], q + config.joint_step_cap))
        return cls(origin, np.concatenate(lo), np.concatenate(hi), config.base_step_cap, config.joint_step_cap)

    def project(self, x: np.ndarray) -> np.ndarray:
        x = np.array(x, dtype=float)
        o = self.origin
        dx, dy = x[0] - o[0], x[1] - o[1]
        n = math.hypot(dx, dy)
        if n > self.base_cap:
            f = self.base_cap / n
            x[0], x[1] = o[0] + dx * f, o[1] + dy * f
        dyaw = min(max(wrap_angle(x[2] - o[2]), -self.yaw_cap), self.yaw_cap)
        x[2] = o[2] + dyaw
        x[3:] = np.minimum(np.maximum(x[3:], self.joint_lo), self.joint_hi)
        return x


def visit_scale_vector(state: RobotState, config: AnnealConfig) -> np.ndarray:
    n_j = sum(q.size for q in state.arm_joints)
    return np.concatenate(
        [[config.visit_scale_m, config.visit_scale_m, config.visit_scale_rad], np.full(n_j, config.visit_scale_rad)]
    )


def propose_candidates(current: RobotState, K: int, temp: float, rng, config: AnnealConfig, robot, anchor: RobotState | None = None):
    """K Cauchy perturbations of ``current`` at temperature ``temp``.

    Joints are clamped to limits (and to the step box around ``anchor``
    when given); yaw is wrapped by RobotState.
    """
    if not temp > 0:
        raise ValueError("temperature must be positive")
    box = StepBox.around(anchor if anchor is not None else current, robot, config)
    if anchor is None:
        box = StepBox(
            box.origin,
            np.concatenate([a.joint_limits[:, 0] for a in robot.arms]),
            np.concatenate([a.joint_limits[:, 1] for a in robot.arms]),
            math.inf,
            math.inf,
        )
    x = current.vector()
    scale = visit_scale_vector(current, config)
    return [current.with_vector(box.project(cauchy_visit(x, scale, temp, config.T0, rng))) for _ in range(K)]


def anneal_step(current: RobotState, ctx: CostContext, config: AnnealConfig, rng_factory, evaluate_many=None) -> StepResult:
    """Optimise one trajectory step starting from ``current``.

    ``rng_factory(restart)`` returns the generator for each attempt; a
    restart happens only when no collision-feasible state was found.
    """
    box = StepBox.around(current, ctx.robot, config)
    scale = visit_scale_vector(current, config)
    cap = config.collision_cap

    def objective(x):
        s = current.with_vector(x)
        b = total_cost(current, s, ctx)
        return b.total, b.collision <= cap, b

    mapper = None if evaluate_many is None else (lambda xs: evaluate_many(objective, xs))

    evals = 0
    for restart in range(config.restart_budget + 1):
        res = dual_anneal(
            objective,
            current.vector(),
            config,
            rng_factory(restart),
            visit_scale=scale,
            project=box.project,
            evaluate_many=mapper,
        )
        evals += res.evals
        for a, b in zip(res.trace, res.trace[1:]):
            assert b <= a, "best-cost trace increased"
        if res.feasible:
            return StepResult(
                current.with_vector(res.x), res.payload, evals, res.accepted, res.trace, restart, res.iterations
            )
    raise StepInfeasibleError(f"no collision-free state after {config.restart_budget} restarts")
