"""Independent oracles and small builders shared by the tests.

The oracles deliberately avoid the package's kinematics and cost code:
rotations come from scipy, distances from explicit double loops.
"""
import math

import numpy as np
from scipy.spatial.transform import Rotation

from moto.config import AnnealConfig
from moto.optimizer import dual_anneal
from moto.robot.spec import ArmSpec, RobotSpec, default_dual_arm, default_single_arm
from moto.robot.state import RobotState

# criterion number -> (passed, name, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def record(n: int, name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (bool(ok), name, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] {n}. {name}: {detail}")


def planar_robot(lengths=(0.3, 0.2), mount_z=0.0, r_min=0.1, r_max=None) -> RobotSpec:
    """Horizontal planar arm (all joints about z) mounted at the base centre."""
    n = len(lengths)
    arm = ArmSpec(
        link_lengths=list(lengths),
        joint_axes=[[0, 0, 1]] * n,
        joint_limits=[[-3.0, 3.0]] * n,
        r_min=r_min,
        r_max=sum(lengths) if r_max is None else r_max,
        home=[0.0] * n,
    )
    mount = np.eye(4)
    mount[2, 3] = mount_z
    return RobotSpec(0.1, 0.2, (arm,), (mount,))


def robots():
    return {"single": default_single_arm(), "dual": default_dual_arm()}


def random_state(robot, rng, base_box=2.0, gripper=None) -> RobotState:
    base = (rng.uniform(-base_box, base_box), rng.uniform(-base_box, base_box), rng.uniform(-math.pi, math.pi))
    joints = tuple(rng.uniform(a.joint_limits[:, 0], a.joint_limits[:, 1]) for a in robot.arms)
    return RobotState(base, joints, gripper or ())


def yaw_matrix(x, y, yaw) -> np.ndarray:
    T = np.eye(4)
    T[:3, :3] = Rotation.from_euler("z", yaw).as_matrix()
    T[0, 3], T[1, 3] = x, y
    return T


def fk_oracle(robot, state, arm_index=0) -> np.ndarray:
    """World EE pose as a plain product of homogeneous matrices."""
    arm = robot.arms[arm_index]
    T = yaw_matrix(*state.base) @ robot.arm_mounts[arm_index]
    for axis, L, q in zip(arm.joint_axes, arm.link_lengths, state.arm_joints[arm_index]):
        R = np.eye(4)
        R[:3, :3] = Rotation.from_rotvec(np.asarray(axis) * q).as_matrix()
        Tl = np.eye(4)
        Tl[0, 3] = L
        T = T @ R @ Tl
    return T


def brute_nearest(points, q) -> float:
    best = math.inf
    for p in points:
        d = math.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2)
        best = min(best, d)
    return best


def brute_votes(points, voters, tau):
    """(index, count) by explicit double loop; strict < tau, lowest index wins."""
    best_i, best_c = -1, 0
    counts = []
    for i, p in enumerate(points):
        c = 0
        for v in voters:
            if math.dist(p, v) < tau:
                c += 1
        counts.append(c)
        if c > best_c:
            best_i, best_c = i, c
    return best_i, best_c, counts


# -- closed-form annealing benchmarks ------------------------------------------


def bowl_sine(x):
    """Sinusoid on a shifted bowl; many local minima, one global one."""
    return 0.15 * ((x[0] - 0.6) ** 2 + (x[1] + 1.1) ** 2) + math.sin(3 * x[0]) * math.sin(3 * x[1]) + 0.3 * math.cos(2 * x[0] + 1)


def grid_certified_minimum(n=1000, lo=-5.0, hi=5.0):
    g = np.linspace(lo, hi, n)
    X, Y = np.meshgrid(g, g, indexing="ij")
    F = 0.15 * ((X - 0.6) ** 2 + (Y + 1.1) ** 2) + np.sin(3 * X) * np.sin(3 * Y) + 0.3 * np.cos(2 * X + 1)
    i, j = np.unravel_index(np.argmin(F), F.shape)
    xs = np.array([g[i], g[j]])
    # best value outside the global basin: the basin must be strictly deeper
    far = np.hypot(X - xs[0], Y - xs[1]) > 0.6
    return xs, float(F[i, j]), float(F[far].min())


class Counted:
    """Objective wrapper that remembers the best point in the first ``limit`` calls."""

    def __init__(self, f, limit):
        self.f, self.limit, self.calls = f, limit, 0
        self.best_x, self.best_f = None, math.inf

    def __call__(self, x):
        self.calls += 1
        v = float(self.f(x))
        if self.calls <= self.limit and v < self.best_f:
            self.best_x, self.best_f = np.array(x), v
        return v, True, None


def run_bowl_sine(seed, budget=10_000):
    rng = np.random.default_rng(seed)
    obj = Counted(bowl_sine, budget)
    # the search runs to the evaluation budget rather than a stall window
    cfg = AnnealConfig(max_iters=budget, stop_window=budget)
    res = dual_anneal(
        obj, rng.uniform(-5, 5, 2), cfg, rng, visit_scale=[1.0, 1.0],
        project=lambda v: np.clip(v, -5, 5), max_evals=budget, f_floor=-math.inf,
    )
    return obj, res


def run_quadratic(seed, budget=2000):
    rng = np.random.default_rng(seed)
    obj = Counted(lambda x: x[0] ** 2, budget)
    res = dual_anneal(obj, rng.uniform(-5, 5, 1), AnnealConfig(), rng, visit_scale=[1.0], max_evals=budget)
    return obj, res
