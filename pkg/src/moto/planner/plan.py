"""Task orchestration: keypoints, navigation, optimisation, handoff bookkeeping."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from moto.config import RunConfig
from moto.costs import CostContext, total_cost
from moto.errors import ConfigurationError, NoConsensusError, NoDepthError
from moto.keypoints import (
    Keypoint3D,
    ScriptedSelector,
    SyntheticFeatures,
    backproject,
    choose_arm,
    contact_offset,
    propose_keypoints,
    select_keypoints,
    vote_target_keypoint,
)
from moto.keypoints.arm import ak_position
from moto.optimizer.trajectory import (
    CONTACT,
    STALLED,
    Trajectory,
    _commit,
    navigate,
    optimize_trajectory,
    reached,
)
from moto.robot.state import RobotState

SKIPPED = "skipped"  # already docked, no motion needed
NO_CONSENSUS = "no_consensus"
# Forced grid-planner moves allowed per subtask after the annealer stalls.
NAV_REPLANS = 2


@dataclass
class VoteResult:
    """Everything the keypoint pipeline produced for one subtask."""

    subtask: int
    proposals: dict  # view id -> list of KeypointProposal
    selected: dict  # view id -> list of KeypointProposal
    voters: np.ndarray  # (V*m, 3)
    tk: Keypoint3D | None
    tau: float
    retried: bool = False

    def to_dict(self) -> dict:
        def props(ps):
            return [{"pixel": list(p.pixel), "mask": list(p.mask_id)} for p in ps]

        out = {
            "subtask": self.subtask,
            "tau": self.tau,
            "retried": self.retried,
            "views": [
                {"id": vid, "proposals": props(self.proposals[vid]), "selected": props(self.selected[vid])}
                for vid in self.proposals
            ],
            "voters": [[float(c) for c in p] for p in self.voters],
        }
        if self.tk is None:
            out["winner"] = None
        else:
            src = self.tk.source
            out["winner"] = {
                "index": src["index"],
                "votes": src["votes"],
                "position": [float(c) for c in self.tk.position],
            }
            out["counts"] = {int(i): int(c) for i, c in sorted(src["counts"].items())}
        return out


@dataclass
class HandoffRecord:
    subtask: int
    success: bool
    status: str
    base: list
    arm_joints: list
    arm: int | None = None
    tk: list | None = None
    ak: list | None = None
    distance: float = math.inf
    min_clearance: float = math.nan
    radius: float = math.nan
    votes: int = 0
    steps: int = 0
    evals: int = 0
    restarts: int = 0
    reason: str = ""
    after_failure: int | None = None  # earliest failed predecessor, if any

    def to_dict(self) -> dict:
        return {
            "subtask": self.subtask,
            "success": self.success,
            "status": self.status,
            "reason": self.reason,
            "after_failure": self.after_failure,
            "arm": self.arm,
            "base": self.base,
            "arm_joints": self.arm_joints,
            "tk": self.tk,
            "ak": self.ak,
            "distance": self.distance,
            "min_clearance": self.min_clearance,
            "radius": self.radius,
            "votes": self.votes,
            "steps": self.steps,
            "evals": self.evals,
            "restarts": self.restarts,
        }


@dataclass
class PlanResult:
    records: list[HandoffRecord]
    trajectories: list[Trajectory]
    votes: list[VoteResult] = field(default_factory=list)


def _floats(a) -> list:
    return [float(x) for x in np.asarray(a).ravel()]


def generate_target_keypoint(scenario, subtask_index: int, config: RunConfig, selector=None, features=None) -> VoteResult:
    """Views -> proposals -> top-V selection -> backprojection -> vote.

    Proposals are kept to the target object's part masks. One retry at
    twice tau on no consensus; the second failure leaves ``tk`` None.
    """
    kc = config.keypoints
    sub = scenario.task.subtasks[subtask_index]
    selector = selector or ScriptedSelector(scenario.selector)
    features = features or SyntheticFeatures()
    node = scenario.graph.node(sub.target)
    if not node.views:
        raise ConfigurationError(f"object {sub.target} has no camera views")
    proposals, selected, voters = {}, {}, []
    for vid in node.views:
        view = scenario.view(vid)
        props = [p for p in propose_keypoints(view, features(view), kc.k_per_mask, kc.kmeans_seed) if p.mask_id[0] == sub.target]
        proposals[vid] = props
        if not props:
            selected[vid] = []
            continue
        sel = select_keypoints(selector, subtask_index, sub.description, view, props, kc.V)
        selected[vid] = sel
        for p in sel:
            try:
                voters.append(backproject(view, p.pixel))
            except NoDepthError:
                continue
    P_K = np.array(voters, dtype=float).reshape(-1, 3)
    cands = node.point_indices if kc.restrict_to_target else None
    result = VoteResult(subtask_index, proposals, selected, P_K, None, kc.tau)
    if P_K.shape[0] == 0:
        return result
    for attempt, tau in enumerate((kc.tau, 2.0 * kc.tau)):
        try:
            result.tk = vote_target_keypoint(P_K, scenario.cloud, tau, cands)
            result.tau = tau
            result.retried = attempt > 0
            break
        except NoConsensusError:
            result.tau = tau
            result.retried = attempt > 0
    return result


def _home_prefix(traj: Trajectory, ctx: CostContext, config: RunConfig) -> None:
    """Retract every arm toward its home pose in joint-capped, collision-checked steps."""
    robot = ctx.robot
    cap = config.anneal.joint_step_cap
    while True:
        cur = traj.states[-1]
        moved = False
        joints = []
        for arm, q in zip(robot.arms, cur.arm_joints):
            d = arm.home - q
            step = np.clip(d, -cap, cap)
            moved |= bool(np.any(step != 0))
            joints.append(q + step)
        if not moved:
            return
        cand = RobotState(cur.base, tuple(joints), cur.gripper)
        if total_cost(cur, cand, ctx).collision > config.anneal.collision_cap:
            return
        _commit(traj, cand, ctx, robot, "home")


def plan_subtask(scenario, k: int, state: RobotState, config: RunConfig, vote: VoteResult, jobs: int = 1, departure=None):
    """Optimise subtask ``k`` from ``state``; returns (record, trajectory).

    ``departure`` is (object id, TK) of the previous successful subtask,
    so the arm may start out touching what it just docked at.
    """
    robot = scenario.robot
    sub = scenario.task.subtasks[k]
    w = config.weights
    if vote.tk is None:
        traj = Trajectory([state], [], status=NO_CONSENSUS)
        rec = HandoffRecord(
            k, False, NO_CONSENSUS, _floats(state.base), [_floats(q) for q in state.arm_joints],
            reason=f"no voter consensus at tau={vote.tau:g}",
        )
        return rec, traj
    tk = vote.tk
    arm = choose_arm(robot, state, tk, scenario.selector, k)
    entry = scenario.selector.for_subtask(k)
    offset = contact_offset(scenario.graph, state, arm, entry, scenario.selector.tool_categories)
    held = frozenset(g for g in state.gripper if g is not None)
    if departure is not None and departure[0] == sub.target:
        departure = None
    ctx0 = CostContext(
        robot, scenario.cloud, np.asarray(tk.position, dtype=float), arm, offset, sub.target, held, w, departure
    )

    b0 = total_cost(state, state, ctx0)
    traj = Trajectory([state], [b0], evals=1)
    if sub.home_first or config.planner.home_first:
        _home_prefix(traj, ctx0, config)
    if reached(traj.final_breakdown, ctx0, config.anneal.collision_cap):
        traj.status = SKIPPED
    else:
        traj.extend(navigate(traj.final, ctx0, config))
        steps_left = config.planner.T_max
        for attempt in range(NAV_REPLANS + 1):
            opt = optimize_trajectory(traj.final, ctx0, config, T_max=steps_left, seed_key=(k, attempt), jobs=jobs)
            traj.extend(opt)
            steps_left -= len(opt.steps)
            if opt.status != STALLED or steps_left <= 0 or attempt == NAV_REPLANS:
                break
            # stuck in a local minimum: let the grid planner move the base
            nav = navigate(traj.final, ctx0, config, force=True)
            if len(nav) == 1:
                break
            traj.extend(nav)
    fb = traj.final_breakdown
    ok = traj.status in (CONTACT, SKIPPED) and reached(fb, ctx0, config.anneal.collision_cap)
    fin = traj.final
    rec = HandoffRecord(
        subtask=k,
        success=ok,
        status=traj.status,
        base=_floats(fin.base),
        arm_joints=[_floats(q) for q in fin.arm_joints],
        arm=arm,
        tk=_floats(tk.position),
        ak=_floats(ak_position(robot, fin, arm, offset)),
        distance=fb.dist,
        min_clearance=traj.min_clearance,
        radius=fb.radius,
        votes=int(tk.source["votes"]),
        steps=len(traj) - 1,
        evals=traj.evals,
        restarts=traj.restarts,
        reason="" if ok else f"ended with status {traj.status} at distance {fb.dist:.4f} m",
    )
    return rec, traj


def plan_task(scenario, config: RunConfig, selector=None, features=None, jobs: int = 1) -> PlanResult:
    """Run every subtask in order, each starting where the previous one ended."""
    state = scenario.start
    out = PlanResult([], [], [])
    first_failure = None
    departure = None
    for k, sub in enumerate(scenario.task.subtasks):
        vote = generate_target_keypoint(scenario, k, config, selector, features)
        rec, traj = plan_subtask(scenario, k, state, config, vote, jobs, departure)
        rec.after_failure = first_failure
        if not rec.success and first_failure is None:
            first_failure = k
        out.records.append(rec)
        out.trajectories.append(traj)
        out.votes.append(vote)
        state = traj.final
        departure = (sub.target, np.asarray(rec.tk)) if rec.success else None
        if rec.success and sub.gripper_after is not None:
            state = state.with_gripper(sub.gripper_after)
    return out
