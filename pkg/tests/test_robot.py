import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import fk_oracle, planar_robot, random_state, robots, yaw_matrix
from moto.errors import DomainError, UnreachableTargetError
from moto.robot import (
    arm_radius,
    default_dual_arm,
    default_single_arm,
    forward_kinematics,
    inverse_kinematics,
    surface_query_points,
)
from moto.robot.spec import ArmSpec, RobotSpec, mount_xy_offset, preset
from moto.robot.state import RobotState, check_limits, home_state, move_base

DATA = Path(__file__).parent / "data"
angles = st.floats(-math.pi, math.pi, allow_nan=False)
offsets = st.floats(-3, 3, allow_nan=False)


# -- forward kinematics ----------------------------------------------------


def test_fk_straight_planar_chain():
    r = planar_robot((0.3, 0.2))
    T = forward_kinematics(r, RobotState((0, 0, 0), ([0.0, 0.0],)))
    assert np.allclose(T[:3, 3], [0.5, 0.0, 0.0], atol=1e-15)


def test_fk_base_yaw_rotates_end_effector():
    r = planar_robot((0.3, 0.2))
    T = forward_kinematics(r, RobotState((0, 0, math.pi / 2), ([0.0, 0.0],)))
    assert np.allclose(T[:3, 3], [0.0, 0.5, 0.0], atol=1e-15)


def test_fk_matches_matrix_chain_oracle():
    rng = np.random.default_rng(0)
    for robot in robots().values():
        for _ in range(300):
            s = random_state(robot, rng)
            for a in range(robot.n_arms):
                assert np.max(np.abs(forward_kinematics(robot, s, a) - fk_oracle(robot, s, a))) <= 1e-10


def test_fk_arm_index_out_of_range():
    with pytest.raises(DomainError):
        forward_kinematics(default_single_arm(), home_state(default_single_arm()), 1)


@settings(max_examples=80, deadline=None)
@given(offsets, offsets, angles, offsets, offsets, angles, st.integers(0, 2**32 - 1))
def test_fk_equivariant_under_base_motion(x, y, yaw, dx, dy, dyaw, seed):
    robot = default_dual_arm()
    s = random_state(robot, np.random.default_rng(seed))
    s = RobotState((x, y, yaw), s.arm_joints)
    g = yaw_matrix(dx, dy, dyaw)
    moved = move_base(s, dx, dy, dyaw)
    for a in range(robot.n_arms):
        assert np.max(np.abs(forward_kinematics(robot, moved, a) - g @ forward_kinematics(robot, s, a))) <= 1e-10


def test_robot_transform_is_pure_yaw_and_invertible():
    s = RobotState((1.0, -2.0, 2.5), (np.zeros(4),))
    E = s.transform
    assert np.allclose(E[:3, :3], yaw_matrix(0, 0, 2.5)[:3, :3], atol=1e-15)
    assert E[2, 3] == 0.0
    assert np.max(np.abs(E @ np.linalg.inv(E) - np.eye(4))) <= 1e-12


def test_yaw_is_wrapped():
    s = RobotState((0, 0, 3 * math.pi), (np.zeros(4),))
    assert -math.pi < s.base[2] <= math.pi
    assert abs(s.base[2] - math.pi) < 1e-12


# -- inverse kinematics ----------------------------------------------------


def test_ik_fixed_point_returns_start_joints():
    robot = default_single_arm()
    s = RobotState((0.2, 0.1, 0.4), (np.array([0.3, -0.8, 1.5, 0.2]),))
    q = inverse_kinematics(robot, forward_kinematics(robot, s), s)
    assert np.array_equal(q, s.arm_joints[0])


def test_ik_beyond_reach_is_unreachable():
    robot = default_single_arm()
    s = home_state(robot)
    with pytest.raises(UnreachableTargetError) as e:
        inverse_kinematics(robot, [2.0, 0.0, 0.9], s)
    assert e.value.residual > 1.0


def test_ik_random_reachable_targets():
    robot = default_single_arm()
    rng = np.random.default_rng(5)
    ok = 0
    n = 200
    for _ in range(n):
        goal = random_state(robot, rng, base_box=0.0)
        target = forward_kinematics(robot, goal)[:3, 3]
        start = RobotState(goal.base, (robot.arms[0].home,))
        try:
            q = inverse_kinematics(robot, target, start)
        except UnreachableTargetError:
            continue
        ok += 1
        s = start.with_arm(0, q)
        check_limits(robot, s)
        assert np.linalg.norm(forward_kinematics(robot, s)[:3, 3] - target) <= 1e-4
    assert ok >= 0.95 * n


def test_ik_rejects_non_finite_target():
    robot = default_single_arm()
    with pytest.raises(DomainError):
        inverse_kinematics(robot, [np.nan, 0, 0], home_state(robot))


# -- query points ----------------------------------------------------------


def test_query_points_n3_folded_arm():
    robot = default_single_arm()
    s = home_state(robot, (0.3, -0.1, 0.7))
    Q = surface_query_points(robot, s, 3)
    assert Q.shape == (3, 3)
    bound = robot.base_radius + robot.arms[0].reach + mount_xy_offset(robot, 0)
    d = np.hypot(Q[:, 0] - 0.3, Q[:, 1] + 0.1)
    # two points on the base wall, one along the arm
    assert np.allclose(d[:2], robot.base_radius)
    assert np.all(d <= bound)


def test_query_points_translate_rigidly():
    robot = default_dual_arm()
    s = random_state(robot, np.random.default_rng(2))
    s2 = RobotState(s.base + np.array([1.0, 0.0, 0.0]), s.arm_joints)
    d = surface_query_points(robot, s2) - surface_query_points(robot, s)
    assert np.allclose(d, [1.0, 0.0, 0.0], atol=1e-12)


@pytest.mark.parametrize("n", [3, 7, 32, 64, 65])
def test_query_points_count_and_determinism(n):
    robot = default_dual_arm()
    s = random_state(robot, np.random.default_rng(n))
    a = surface_query_points(robot, s, n)
    b = surface_query_points(robot, s, n)
    assert a.shape == (n, 3)
    assert np.array_equal(a, b)


def test_query_points_need_three():
    with pytest.raises(DomainError):
        surface_query_points(default_single_arm(), home_state(default_single_arm()), 2)


def _hand_base_point(k, base, robot, n_base=32):
    x, y, yaw = base
    ang = 2 * math.pi * k / n_base + yaw
    h = robot.base_height * (0.15, 0.5, 0.95)[k % 3]
    return np.array([x + robot.base_radius * math.cos(ang), y + robot.base_radius * math.sin(ang), h])


def _hand_arm_point(i, base, q, m=32):
    """Default arm: yaw joint then three pitch joints, worked out in the arm plane."""
    x, y, yaw = base
    L = [0.05, 0.35, 0.30, 0.15]
    psi = yaw + q[0]
    pitch = [0.0, q[1], q[1] + q[2], q[1] + q[2] + q[3]]
    # joint positions as (radial, height) in the vertical plane at heading psi
    joints = [(0.0, 0.9)]
    for Lk, th in zip(L, pitch):
        r0, z0 = joints[-1]
        joints.append((r0 + Lk * math.cos(th), z0 - Lk * math.sin(th)))
    s = (i + 0.5) / m * sum(L)
    cum = np.concatenate([[0], np.cumsum(L)])
    k = min(int(np.searchsorted(cum, s, side="right") - 1), 3)
    f = (s - cum[k]) / L[k]
    r = joints[k][0] + f * (joints[k + 1][0] - joints[k][0])
    z = joints[k][1] + f * (joints[k + 1][1] - joints[k][1])
    phi = i * math.pi * (3 - math.sqrt(5))
    th = pitch[k]
    ey = np.array([-math.sin(psi), math.cos(psi), 0.0])
    ez = np.array([math.sin(th) * math.cos(psi), math.sin(th) * math.sin(psi), math.cos(th)])
    p = np.array([x + r * math.cos(psi), y + r * math.sin(psi), z])
    return p + 0.04 * (math.cos(phi) * ey + math.sin(phi) * ez)


def test_query_points_match_reference_dump():
    robot = default_single_arm()
    base = (0.5, -0.2, 0.3)
    q = np.array([0.0, -1.2, 2.4, 0.8])
    ref = np.load(DATA / "query_points_default64.npy")
    # five spot points of the dump checked against closed-form geometry
    for k in (0, 1):
        assert np.allclose(ref[k], _hand_base_point(k, base, robot), atol=1e-12)
    for i in (0, 8, 31):
        assert np.allclose(ref[32 + i], _hand_arm_point(i, base, q), atol=1e-12)
    got = surface_query_points(robot, RobotState(base, (q,)), 64)
    assert np.allclose(got, ref, atol=1e-12)


# -- arm radius ------------------------------------------------------------


def test_arm_radius_vertical_pose_is_zero():
    # a single vertical link straight up from the base centre
    arm = ArmSpec([0.5], [[0, 1, 0]], [[-3, 3]], 0.0, 0.5)
    robot = RobotSpec(0.2, 0.5, (arm,), (np.eye(4),))
    s = RobotState((1.0, 2.0, 0.3), ([-math.pi / 2],))
    assert abs(arm_radius(robot, s)) < 1e-15


def test_arm_radius_straight_planar_chain():
    assert arm_radius(planar_robot((0.3, 0.2)), RobotState((0, 0, 0), ([0.0, 0.0],))) == pytest.approx(0.5, abs=1e-15)


def test_arm_radius_matches_fk_and_is_bounded():
    rng = np.random.default_rng(8)
    for robot in robots().values():
        for _ in range(300):
            s = random_state(robot, rng)
            for a in range(robot.n_arms):
                p = fk_oracle(robot, s, a)[:3, 3]
                r = arm_radius(robot, s, a)
                assert abs(r - math.hypot(p[0] - s.base[0], p[1] - s.base[1])) <= 1e-12
                assert r <= robot.arms[a].reach + mount_xy_offset(robot, a) + 1e-12


# -- specs -----------------------------------------------------------------


def test_presets():
    assert preset("robot/default_single_arm").n_arms == 1
    assert preset("default_dual_arm").n_arms == 2
    with pytest.raises(DomainError):
        preset("robot/tripod")


@pytest.mark.parametrize(
    "kw",
    [
        dict(link_lengths=[0.3, -0.1]),
        dict(joint_limits=[[0, 0], [-1, 1]]),
        dict(r_min=0.4, r_max=0.3),
        dict(r_max=2.0),
    ],
)
def test_arm_spec_invariants(kw):
    base = dict(link_lengths=[0.3, 0.2], joint_axes=[[0, 0, 1], [0, 0, 1]], joint_limits=[[-1, 1], [-1, 1]], r_min=0.1, r_max=0.5)
    base.update(kw)
    with pytest.raises(DomainError):
        ArmSpec(**base)


def test_robot_spec_invariants():
    arm = default_single_arm().arms[0]
    with pytest.raises(DomainError):
        RobotSpec(0.0, 1.0, (arm,), (np.eye(4),))
    with pytest.raises(DomainError):
        RobotSpec(0.2, 1.0, (), ())


def test_check_limits():
    robot = default_single_arm()
    with pytest.raises(DomainError):
        check_limits(robot, RobotState((0, 0, 0), (np.array([0, 0, 3.0, 0]),)))
