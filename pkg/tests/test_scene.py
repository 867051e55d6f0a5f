import copy
import math

import numpy as np
import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_nearest
from moto.corpus import minimal_document
from moto.errors import DomainError, IntegrityError, ScenarioParseError
from moto.geometry import look_at
from moto.scene import CameraView, RENDER_EPS, ScenePointCloud, load_scenario, render_depth, save_scenario
from moto.scene.scenario import dump_yaml, scenario_from_dict, scenario_to_dict

coords = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
point = st.tuples(coords, coords, coords)


def cloud_of(pts, obj=None):
    pts = np.asarray(pts, dtype=float).reshape(-1, 3)
    obj = np.zeros(len(pts), int) if obj is None else obj
    return ScenePointCloud(pts, obj, np.zeros(len(pts), int))


# -- nearest distance ------------------------------------------------------


def test_nearest_distance_identity():
    c = cloud_of([[0, 0, 0], [1, 2, 3], [-1, 0.5, 2]])
    assert c.nearest_distance([1, 2, 3]) == 0.0


def test_nearest_distance_345():
    assert cloud_of([[0, 0, 0]]).nearest_distance([3, 4, 0]) == 5.0


def test_nearest_distance_matches_brute_force():
    rng = np.random.default_rng(1)
    pts = rng.uniform(-1, 1, (1000, 3))
    c = cloud_of(pts)
    for q in rng.uniform(-1.5, 1.5, (100, 3)):
        assert abs(c.nearest_distance(q) - brute_nearest(pts, q)) <= 1e-12


def test_nearest_distance_rejects_non_finite():
    c = cloud_of([[0, 0, 0]])
    with pytest.raises(DomainError):
        c.nearest_distance([np.nan, 0, 0])
    with pytest.raises(DomainError):
        c.nearest_distance([np.inf, 0, 0])


def test_exclusion_drops_whole_objects():
    c = cloud_of([[0, 0, 0], [5, 0, 0]], obj=np.array([1, 2]))
    assert c.nearest_distance([0, 0, 0], exclude={1}) == 5.0
    assert c.nearest_index([0.1, 0, 0], exclude={1}) == 1
    assert math.isinf(c.nearest_distances([[0, 0, 0]], exclude={1, 2})[0])


def test_cloud_invariants():
    with pytest.raises(DomainError):
        cloud_of(np.zeros((0, 3)))
    with pytest.raises(DomainError):
        cloud_of([[0, np.nan, 0]])


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=1, max_size=40), point)
def test_nearest_distance_property_brute_force(pts, q):
    assert abs(cloud_of(pts).nearest_distance(q) - brute_nearest(pts, q)) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=1, max_size=40), point, point)
def test_nearest_distance_is_1_lipschitz(pts, q1, q2):
    c = cloud_of(pts)
    gap = abs(c.nearest_distance(q1) - c.nearest_distance(q2))
    assert gap <= math.dist(q1, q2) + 1e-12


# -- rendering -------------------------------------------------------------


def axis_view(w=21, h=21, f=50.0):
    """Camera at the origin looking down +z (identity extrinsics)."""
    return CameraView("cam", (f, f, (w - 1) / 2, (h - 1) / 2), np.eye(4), w, h)


def test_render_single_point_on_axis():
    v = render_depth(axis_view(), cloud_of([[0, 0, 2.0]]))
    assert v.depth[10, 10] == 2.0
    assert np.isnan(v.depth).sum() == v.depth.size - 1
    assert (v.pixel_labels[..., 0] >= 0).sum() == 1


def test_render_point_behind_camera_is_background():
    v = render_depth(axis_view(), cloud_of([[0, 0, -2.0]]))
    assert np.all(np.isnan(v.depth))
    assert np.all(v.pixel_labels == -1)


def test_render_z_min_of_three_against_projection_oracle():
    # three points on one ray through pixel (13, 7) at different depths
    view = axis_view()
    fx, fy, cx, cy = view.intrinsics
    u, v = 13, 7
    pts = [[(u - cx) * z / fx, (v - cy) * z / fy, z] for z in (3.0, 1.5, 2.2)]
    r = render_depth(view, cloud_of(pts, obj=np.array([4, 5, 6])))
    # direct per-point projection oracle
    proj = [(round(fx * p[0] / p[2] + cx), round(fy * p[1] / p[2] + cy), p[2]) for p in pts]
    assert {(a, b) for a, b, _ in proj} == {(u, v)}
    assert r.depth[v, u] == min(z for _, _, z in proj)
    assert r.pixel_labels[v, u, 0] == 5
    assert np.isfinite(r.depth).sum() == 1


def test_render_zero_resolution_is_domain_error():
    view = CameraView("z", (10.0, 10.0, 0.0, 0.0), np.eye(4), 0, 0)
    with pytest.raises(DomainError):
        render_depth(view, cloud_of([[0, 0, 1]]))


def test_intrinsics_invariants():
    with pytest.raises(DomainError):
        CameraView("bad", (0.0, 10.0, 5.0, 5.0), np.eye(4), 10, 10)
    with pytest.raises(DomainError):
        CameraView("bad", (10.0, 10.0, 12.0, 5.0), np.eye(4), 10, 10)


def test_backprojection_of_rendered_pixels_lies_near_scene():
    rng = np.random.default_rng(3)
    pts = rng.uniform(-0.3, 0.3, (400, 3)) + [0, 0, 0]
    cloud = cloud_of(pts)
    fx = 60.0
    view = CameraView("v", (fx, fx, 39.5, 29.5), look_at((1.2, -0.4, 0.6), (0, 0, 0)), 80, 60)
    r = render_depth(view, cloud)
    rows, cols = np.nonzero(np.isfinite(r.depth))
    assert rows.size > 50
    for v_, u_ in zip(rows, cols):
        d = r.depth[v_, u_]
        p = r.backproject((u_, v_), d)
        # splat footprint is half a pixel along each image axis
        assert cloud.nearest_distance(p) <= 2 * RENDER_EPS * d / fx
        w = cloud.nearest_index(p)
        assert cloud.object_ids[w] == r.pixel_labels[v_, u_, 0]


# -- scenario files --------------------------------------------------------


def test_minimal_scenario_loads(tmp_path):
    p = tmp_path / "m.yaml"
    p.write_text(yaml.safe_dump(minimal_document()))
    sc = load_scenario(p)
    assert len(sc.graph.nodes) == 1
    assert len(sc.graph.edges) == 0
    assert len(sc.views) == 1
    assert sc.robot.arms[0].n_joints == 2


def test_node_centroid_is_mean_of_points(scenarios_dir):
    sc = load_scenario(scenarios_dir / "kitchen_cup.yaml")
    for n in sc.graph.nodes:
        assert n.point_indices.size > 0
        assert np.linalg.norm(n.centroid - sc.cloud.points[n.point_indices].mean(axis=0)) <= 1e-9


def test_edge_to_missing_node_is_integrity_error():
    doc = minimal_document()
    doc["graph"]["edges"] = [[0, 99, "next_to"]]
    with pytest.raises(IntegrityError) as e:
        scenario_from_dict(doc)
    assert "graph.edges[0]" in str(e.value)


def test_relation_outside_vocabulary_is_integrity_error():
    doc = minimal_document()
    doc["graph"]["nodes"].append({"id": 1, "category": "x", "views": []})
    doc["points"]["object_id"][0] = 1
    doc["graph"]["edges"] = [[0, 1, "levitating_over"]]
    with pytest.raises(IntegrityError):
        scenario_from_dict(doc)


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d["points"].pop("xyz"), "points.xyz"),
        (lambda d: d["points"].__setitem__("count", "many"), "points.count"),
        (lambda d: d["views"][0].__setitem__("intrinsics", [1, 2, 3]), "views[0].intrinsics"),
        (lambda d: d["robot"]["arms"][0].__setitem__("r_min", "near"), "robot.arms[0].r_min"),
        (lambda d: d["task"]["subtasks"][0].pop("target"), "task.subtasks[0].target"),
        (lambda d: d.__setitem__("schema", "other/9"), "schema"),
    ],
)
def test_schema_violations_name_the_field(mutate, field):
    doc = copy.deepcopy(minimal_document())
    mutate(doc)
    with pytest.raises(ScenarioParseError) as e:
        scenario_from_dict(doc)
    assert e.value.field == field
    assert field in str(e.value)


def test_dangling_task_target_is_integrity_error():
    doc = minimal_document()
    doc["task"]["subtasks"][0]["target"] = 42
    with pytest.raises(IntegrityError):
        scenario_from_dict(doc)


def test_header_mismatch_is_integrity_error():
    doc = minimal_document()
    doc["header"]["n_points"] += 1
    with pytest.raises(IntegrityError):
        scenario_from_dict(doc)


def test_kitchen_cup_counts_match_header_walked_from_raw_file(scenarios_dir):
    # walk the raw document without the package's parser
    raw = yaml.safe_load((scenarios_dir / "kitchen_cup.yaml").read_text())
    n_points = len(raw["points"]["xyz"]) // 3
    n_nodes = len(raw["graph"]["nodes"])
    assert raw["header"]["n_points"] == n_points == raw["points"]["count"]
    assert raw["header"]["n_nodes"] == n_nodes
    sc = load_scenario(scenarios_dir / "kitchen_cup.yaml")
    assert len(sc.cloud) == n_points
    assert len(sc.graph.nodes) == n_nodes


def test_load_is_deterministic(scenarios_dir):
    a = load_scenario(scenarios_dir / "pick_place_2obj.yaml")
    b = load_scenario(scenarios_dir / "pick_place_2obj.yaml")
    assert a.cloud.same_as(b.cloud)
    for va, vb in zip(a.views, b.views):
        assert np.array_equal(va.depth, vb.depth, equal_nan=True)
        assert np.array_equal(va.pixel_labels, vb.pixel_labels)


def _same_model(a, b):
    assert a.id == b.id
    assert a.cloud.same_as(b.cloud)
    assert [(n.object_id, n.category, n.views) for n in a.graph.nodes] == [
        (n.object_id, n.category, n.views) for n in b.graph.nodes
    ]
    assert a.graph.edges == b.graph.edges
    for va, vb in zip(a.views, b.views):
        assert va.view_id == vb.view_id and va.intrinsics == vb.intrinsics
        assert np.array_equal(va.extrinsics, vb.extrinsics)
        assert np.array_equal(va.depth, vb.depth, equal_nan=True)
    assert a.start.identical(b.start)
    assert a.task == b.task
    assert a.selector.to_dict() == b.selector.to_dict()
    for x, y in zip(a.robot.arms, b.robot.arms):
        assert np.array_equal(x.link_lengths, y.link_lengths) and np.array_equal(x.joint_axes, y.joint_axes)
    # text comparison: background depth is NaN, which never compares equal
    assert dump_yaml(scenario_to_dict(a)) == dump_yaml(scenario_to_dict(b))


@pytest.mark.parametrize("name", ["minimal", "serve_water", "pick_place_2obj"])
def test_load_save_load_round_trip(tmp_path, scenarios_dir, name):
    a = load_scenario(scenarios_dir / f"{name}.yaml")
    save_scenario(a, tmp_path / "copy.yaml")
    b = load_scenario(tmp_path / "copy.yaml")
    _same_model(a, b)


def test_round_trip_keeps_authored_depth(tmp_path):
    doc = minimal_document()
    sc = scenario_from_dict(doc)
    v = sc.views[0]
    doc["views"][0]["depth"] = [float(x) for x in v.depth.reshape(-1)]
    doc["views"][0]["labels"] = [int(x) for x in v.pixel_labels.reshape(-1)]
    a = scenario_from_dict(doc)
    assert a.authored_depth == {v.view_id}
    save_scenario(a, tmp_path / "d.yaml")
    _same_model(a, load_scenario(tmp_path / "d.yaml"))


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ScenarioParseError):
        load_scenario(tmp_path / "nope.yaml")
