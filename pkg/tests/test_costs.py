import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import fk_oracle, planar_robot, random_state
from moto.config import CostWeights
from moto.costs import (
    FINAL_APPROACH_FACTOR,
    CostContext,
    collision_cost,
    keypoint_distance_cost,
    margin_cost,
    smoothness_cost,
    total_cost,
)
from moto.errors import DomainError
from moto.geometry import translation
from moto.robot import default_dual_arm, default_single_arm, surface_query_points
from moto.robot.spec import ArmSpec, RobotSpec
from moto.robot.state import RobotState
from moto.scene import ScenePointCloud


def cloud_of(pts, obj=None):
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    obj = np.zeros(len(pts), int) if obj is None else np.asarray(obj)
    return ScenePointCloud(pts, obj, np.zeros(len(pts), int))


FAR = cloud_of([[100.0, 100.0, 100.0]])


def brute_collision(Q, P, eps0):
    d = np.array([min(math.dist(q, p) for p in P) for q in Q])
    return float(np.sum(np.maximum(0.0, eps0 - d))), float(d.min())


def dyadic_robot():
    """Arm radius lands exactly on the band midpoint at zero joints."""
    arm = ArmSpec([0.5], [[0, 0, 1]], [[-3, 3]], 0.25, 0.5, home=[0.0])
    return RobotSpec(0.1, 0.2, (arm,), (translation(-0.125, 0.0, 0.5),))


# -- keypoint distance ----------------------------------------------------


def test_distance_zero_at_contact_and_unit_offset():
    robot = default_single_arm()
    s = random_state(robot, np.random.default_rng(0))
    ee = fk_oracle(robot, s)[:3, 3]
    ctx = CostContext(robot, FAR, forward_ee(robot, s))
    assert keypoint_distance_cost(s, ctx) == 0.0
    ctx = CostContext(robot, FAR, forward_ee(robot, s) + [1.0, 0, 0])
    assert keypoint_distance_cost(s, ctx) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(ee, forward_ee(robot, s), atol=1e-12)


def forward_ee(robot, s, a=0):
    from moto.robot import forward_kinematics

    return forward_kinematics(robot, s, a)[:3, 3].copy()


def test_distance_matches_recomposition_with_offset():
    rng = np.random.default_rng(1)
    robot = default_dual_arm()
    for _ in range(300):
        s = random_state(robot, rng)
        a = int(rng.integers(0, 2))
        off = rng.uniform(-0.1, 0.1, 3) if rng.random() < 0.5 else None
        tk = rng.uniform(-2, 2, 3)
        ak = fk_oracle(robot, s, a) @ np.append(np.zeros(3) if off is None else off, 1.0)
        ctx = CostContext(robot, FAR, tk, a, off)
        assert abs(keypoint_distance_cost(s, ctx) - np.linalg.norm(tk - ak[:3])) <= 1e-12


# -- collision -------------------------------------------------------------


def test_collision_zero_when_clear():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    c, clear = collision_cost(s, robot, FAR, 64, 0.05)
    assert c == 0.0 and clear > 100


def test_collision_single_full_penetration():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    Q = surface_query_points(robot, s, 64)
    cloud = cloud_of(Q[0:1])
    # every other query point is at least eps0 away from that one
    others = np.linalg.norm(Q[1:] - Q[0], axis=1)
    assert others.min() >= 0.09
    c, clear = collision_cost(s, robot, cloud, 64, 0.09)
    assert c == pytest.approx(0.09, abs=1e-15)
    assert clear == 0.0


def test_collision_matches_double_loop():
    rng = np.random.default_rng(2)
    robot = default_single_arm()
    for _ in range(30):
        s = random_state(robot, rng, base_box=0.3)
        P = rng.uniform(-1, 1, (150, 3)) + [0, 0, 0.8]
        c, clear = collision_cost(s, robot, cloud_of(P), 32, 0.15)
        bc, bclear = brute_collision(surface_query_points(robot, s, 32), P, 0.15)
        assert abs(c - bc) <= 1e-9 and abs(clear - bclear) <= 1e-9


def test_collision_excludes_objects():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    Q = surface_query_points(robot, s, 64)
    cloud = cloud_of(np.vstack([Q[0], [50, 50, 50]]), obj=[7, 8])
    assert collision_cost(s, robot, cloud, 64, 0.05, exclude={7})[0] == 0.0
    assert collision_cost(s, robot, cloud, 64, 0.05)[0] > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.3), st.floats(0.0, 0.3), st.floats(0.0, 0.3))
def test_collision_non_increasing_moving_away(t1, dt, z):
    # one scene point in front of the base; the robot backs off along -x
    robot = default_single_arm()
    p = np.array([0.3, 0.0, 0.1 + z])
    cloud = cloud_of([p])

    def cost_at(t):
        s = RobotState((-t, 0.0, 0.0), (robot.arms[0].home,))
        return collision_cost(s, robot, cloud, 64, 0.2)[0]

    assert cost_at(t1 + dt) <= cost_at(t1) + 1e-15


# -- smoothness ------------------------------------------------------------


def test_smoothness_examples():
    a = RobotState((1, 2, 0.3), (np.array([0.1, 0.2, 0.3, 0.4]),))
    assert smoothness_cost(a, a) == 0.0
    b = RobotState((4, 6, 0.3), a.arm_joints)
    assert smoothness_cost(a, b) == 5.0
    c = RobotState((0, 0, -3.1), a.arm_joints)
    d = RobotState((0, 0, 3.1), a.arm_joints)
    assert smoothness_cost(c, d) == pytest.approx(2 * math.pi - 6.2, abs=1e-12)
    assert smoothness_cost(c, d) == pytest.approx(0.0832, abs=1e-4)


def test_smoothness_sums_both_arms():
    robot = default_dual_arm()
    a = RobotState((0, 0, 0), tuple(arm.home for arm in robot.arms))
    b = RobotState((0, 0, 0), (robot.arms[0].home + [0.3, 0, 0, 0.4], robot.arms[1].home + [0, 0.6, 0.8, 0]))
    assert smoothness_cost(a, b) == pytest.approx(0.5 + 1.0, abs=1e-12)


def test_smoothness_mismatched_arms():
    a = RobotState((0, 0, 0), (np.zeros(4),))
    b = RobotState((0, 0, 0), (np.zeros(4), np.zeros(4)))
    with pytest.raises(DomainError):
        smoothness_cost(a, b)


state_vec = st.tuples(*[st.floats(-3, 3, allow_nan=False)] * 7)


def _st(v):
    return RobotState(v[:3], (np.array(v[3:]),))


@settings(max_examples=150, deadline=None)
@given(state_vec, state_vec, state_vec)
def test_smoothness_triangle_inequality(a, b, c):
    A, B, C = _st(a), _st(b), _st(c)
    assert smoothness_cost(A, C) <= smoothness_cost(A, B) + smoothness_cost(B, C) + 1e-12


@settings(max_examples=80, deadline=None)
@given(state_vec, state_vec)
def test_smoothness_symmetric_and_non_negative(a, b):
    A, B = _st(a), _st(b)
    assert smoothness_cost(A, B) >= 0
    assert smoothness_cost(A, B) == pytest.approx(smoothness_cost(B, A), abs=1e-12)


# -- margin ----------------------------------------------------------------


def test_margin_examples():
    r = dyadic_robot()
    assert margin_cost(r, RobotState((0, 0, 0), ([0.0],))) == 0.0
    p = planar_robot((0.3, 0.3), r_min=0.2, r_max=0.6)
    assert margin_cost(p, RobotState((0, 0, 0), ([0.0, 0.0],))) == pytest.approx(0.2, abs=1e-12)


def test_margin_matches_fk():
    rng = np.random.default_rng(3)
    robot = default_single_arm()
    mid = robot.arms[0].r_mid
    for _ in range(300):
        s = random_state(robot, rng)
        p = fk_oracle(robot, s)[:3, 3]
        assert abs(margin_cost(robot, s) - abs(mid - math.hypot(p[0] - s.base[0], p[1] - s.base[1]))) <= 1e-12


# -- total -----------------------------------------------------------------


def test_total_all_components_zero():
    r = dyadic_robot()
    s = RobotState((0, 0, 0), ([0.0],))
    ctx = CostContext(r, FAR, forward_ee(r, s), weights=CostWeights.unit())
    b = total_cost(s, s, ctx)
    assert (b.dist, b.collision, b.smooth, b.margin, b.total) == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_unit_weights_give_unweighted_sum():
    rng = np.random.default_rng(4)
    robot = default_single_arm()
    cloud = cloud_of(rng.uniform(-1, 1, (200, 3)) + [0, 0, 0.8])
    for _ in range(100):
        a, b = random_state(robot, rng, 0.5), random_state(robot, rng, 0.5)
        br = total_cost(a, b, CostContext(robot, cloud, rng.uniform(-1, 1, 3), weights=CostWeights.unit()))
        assert br.total == br.dist + br.collision + br.smooth + br.margin
        assert min(br.dist, br.collision, br.smooth, br.margin) >= 0


def test_weighted_sum_identity_is_exact():
    rng = np.random.default_rng(5)
    robot = default_single_arm()
    cloud = cloud_of(rng.uniform(-1, 1, (200, 3)) + [0, 0, 0.8])
    w = CostWeights(w_dist=1.7, w_collision=3.0, w_smooth=0.3, w_margin=0.9)
    for _ in range(100):
        a, b = random_state(robot, rng, 0.5), random_state(robot, rng, 0.5)
        br = total_cost(a, b, CostContext(robot, cloud, rng.uniform(-1, 1, 3), weights=w))
        assert br.total == w.w_dist * br.dist + w.w_collision * br.collision + w.w_smooth * br.smooth + w.w_margin * br.margin


def test_collision_weight_difference_is_the_collision_term():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    Q = surface_query_points(robot, s, 64)
    cloud = cloud_of(Q[:5] + 0.01)
    tk = np.array([0.5, 0.2, 1.0])
    on = total_cost(s, s, CostContext(robot, cloud, tk, weights=CostWeights(w_collision=1.0)))
    off = total_cost(s, s, CostContext(robot, cloud, tk, weights=CostWeights(w_collision=0.0)))
    assert on.collision > 0
    assert on.total - off.total == pytest.approx(on.collision, abs=1e-15)


def test_total_is_pure():
    rng = np.random.default_rng(6)
    robot = default_dual_arm()
    cloud = cloud_of(rng.uniform(-1, 1, (300, 3)) + [0, 0, 0.8])
    ctx = CostContext(robot, cloud, np.array([0.3, 0.1, 0.9]), 1)
    a, b = random_state(robot, rng, 0.5), random_state(robot, rng, 0.5)
    assert total_cost(a, b, ctx) == total_cost(a, b, ctx)


def test_final_approach_excludes_target_only_near_contact():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    ee = forward_ee(robot, s)
    # target object sits right on the end effector
    cloud = cloud_of([ee, [40, 40, 40]], obj=[3, 4])
    w = CostWeights()
    near = total_cost(s, s, CostContext(robot, cloud, ee + [FINAL_APPROACH_FACTOR * w.contact_tol * 0.9, 0, 0], target_object=3))
    far = total_cost(s, s, CostContext(robot, cloud, ee + [FINAL_APPROACH_FACTOR * w.contact_tol * 1.1, 0, 0], target_object=3))
    assert near.final_approach and near.collision == 0.0
    assert not far.final_approach and far.collision > 0.0


def test_held_objects_never_collide():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,), (3,))
    ee = forward_ee(robot, s)
    cloud = cloud_of([ee, [40, 40, 40]], obj=[3, 4])
    b = total_cost(s, s, CostContext(robot, cloud, ee + [2.0, 0, 0], held=frozenset({3})))
    assert b.collision == 0.0


def test_departure_exclusion_releases_previous_target():
    robot = default_single_arm()
    s = RobotState((0, 0, 0), (robot.arms[0].home,))
    ee = forward_ee(robot, s)
    cloud = cloud_of([ee, [40, 40, 40]], obj=[3, 4])
    tk = ee + [2.0, 0, 0]
    touching = total_cost(s, s, CostContext(robot, cloud, tk, target_object=4, departure=(3, ee)))
    assert touching.collision == 0.0
    gone = total_cost(s, s, CostContext(robot, cloud, tk, target_object=4, departure=(3, ee + [1.0, 0, 0])))
    assert gone.collision > 0.0


def test_weights_validate():
    with pytest.raises(DomainError):
        CostWeights(w_smooth=-1)
    with pytest.raises(DomainError):
        CostWeights(eps0=0)
    with pytest.raises(DomainError):
        CostWeights(contact_tol=0)
