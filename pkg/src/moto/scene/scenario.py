"""Scenario documents: loading, validation and saving.

A scenario is one YAML document. Top-level keys::

    schema      "moto-scenario/1"
    id          scenario identifier
    header      {n_points, n_nodes, n_views, n_subtasks} (checked on load)
    relations   relation vocabulary used by graph edges
    points      {count, xyz: [3*count floats], object_id: [count], part_id: [count]}
    graph       {nodes: [{id, category, views: [view ids]}], edges: [[a, b, relation]]}
    views       [{id, width, height, intrinsics: [fx, fy, cx, cy],
                  extrinsics: [16 floats, camera<-world, row-major],
                  depth: [h*w floats, .nan = background] (optional),
                  labels: [2*h*w ints] (required with depth)}]
    robot       {preset: name} or {base_radius, base_height,
                  arms: [{link_lengths, joint_axes, joint_limits, r_min, r_max,
                          home (optional), mount: [16 floats, base<-shoulder]}]}
    start       {base: [x, y, yaw], arm_joints (optional), gripper (optional)}
    task        {instruction, subtasks: [{description, target, gripper_after, home_first}]}
    selector    {subtasks: [{views: {view_id: [[u, v], ...]}, arm, tool_offset}],
                 tool_categories: [...]}
    config      optional {weights, anneal, keypoints, planner} overrides
    truth       optional free-form annotations (not read by the planner)

Units are meters, radians and pixels. Views without authored depth are
rendered from the point cloud at load time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from moto.errors import DomainError, IntegrityError, ScenarioParseError
from moto.keypoints.script import SelectorScript, SubtaskScript
from moto.planner.task import Subtask, TaskScript
from moto.robot.spec import ArmSpec, RobotSpec, preset
from moto.robot.state import RobotState, check_limits
from moto.scene.camera import CameraView, render_depth
from moto.scene.cloud import ScenePointCloud
from moto.scene.graph import SceneGraph, build_nodes

SCHEMA = "moto-scenario/1"

_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)
_Dumper = getattr(yaml, "CSafeDumper", yaml.SafeDumper)


@dataclass(frozen=True, eq=False)
class Scenario:
    id: str
    cloud: ScenePointCloud
    graph: SceneGraph
    views: tuple[CameraView, ...]
    robot: RobotSpec
    start: RobotState
    task: TaskScript
    selector: SelectorScript
    config: dict = field(default_factory=dict)
    truth: dict = field(default_factory=dict)
    authored_depth: frozenset = frozenset()

    def view(self, view_id: str) -> CameraView:
        for v in self.views:
            if v.view_id == view_id:
                return v
        raise IntegrityError("views", f"no view {view_id!r}")


def dump_yaml(doc, stream=None):
    return yaml.dump(doc, stream, Dumper=_Dumper, sort_keys=False, default_flow_style=None, width=100, allow_unicode=True)


def load_yaml(text):
    return yaml.load(text, Loader=_Loader)


# -- parsing helpers -------------------------------------------------------


def _get(d, key, path, kind=None, default=...):
    if not isinstance(d, dict):
        raise ScenarioParseError(path, "expected a mapping")
    if key not in d or d[key] is None:
        if default is not ...:
            return default
        raise ScenarioParseError(f"{path}.{key}" if path else key, "missing required field")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ScenarioParseError(f"{path}.{key}" if path else key, f"expected {_kind_name(kind)}, got {type(v).__name__}")
    return v


def _kind_name(kind):
    if isinstance(kind, tuple):
        return " or ".join(k.__name__ for k in kind)
    return kind.__name__


def _floats(v, path, n=None):
    if not isinstance(v, list):
        raise ScenarioParseError(path, "expected a list of numbers")
    try:
        a = np.array(v, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioParseError(path, "expected numbers") from None
    if a.ndim != 1:
        raise ScenarioParseError(path, "expected a flat list of numbers")
    if n is not None and a.size != n:
        raise ScenarioParseError(path, f"expected {n} values, got {a.size}")
    return a


def _ints(v, path, n=None):
    a = _floats(v, path, n)
    if not np.all(np.isfinite(a)) or np.any(a != np.round(a)):
        raise ScenarioParseError(path, "expected integers")
    return a.astype(np.int64)


def _matrix(v, path):
    a = _floats(v, path, 16)
    return a.reshape(4, 4)


# -- sections --------------------------------------------------------------


def _parse_points(doc):
    sec = _get(doc, "points", "", dict)
    n = _get(sec, "count", "points", int)
    if n < 1:
        raise ScenarioParseError("points.count", "need at least one point")
    xyz = _floats(_get(sec, "xyz", "points"), "points.xyz", 3 * n)
    if not np.all(np.isfinite(xyz)):
        raise ScenarioParseError("points.xyz", "coordinates must be finite")
    obj = _ints(_get(sec, "object_id", "points"), "points.object_id", n)
    part = _ints(_get(sec, "part_id", "points"), "points.part_id", n)
    return ScenePointCloud(xyz.reshape(n, 3), obj, part)


def _parse_robot(doc):
    sec = _get(doc, "robot", "", dict)
    if "preset" in sec:
        try:
            return preset(str(sec["preset"]))
        except DomainError as e:
            raise ScenarioParseError("robot.preset", str(e)) from None
    arms, mounts = [], []
    for k, a in enumerate(_get(sec, "arms", "robot", list)):
        p = f"robot.arms[{k}]"
        try:
            arms.append(
                ArmSpec(
                    link_lengths=_floats(_get(a, "link_lengths", p), f"{p}.link_lengths"),
                    joint_axes=np.array(_get(a, "joint_axes", p, list), dtype=float),
                    joint_limits=np.array(_get(a, "joint_limits", p, list), dtype=float),
                    r_min=float(_get(a, "r_min", p, (int, float))),
                    r_max=float(_get(a, "r_max", p, (int, float))),
                    home=None if a.get("home") is None else _floats(a["home"], f"{p}.home"),
                )
            )
        except (DomainError, ValueError) as e:
            if isinstance(e, ScenarioParseError):
                raise
            raise ScenarioParseError(p, str(e)) from None
        mounts.append(_matrix(_get(a, "mount", p), f"{p}.mount"))
    try:
        return RobotSpec(
            float(_get(sec, "base_radius", "robot", (int, float))),
            float(_get(sec, "base_height", "robot", (int, float))),
            tuple(arms),
            tuple(mounts),
        )
    except DomainError as e:
        raise ScenarioParseError("robot", str(e)) from None


def _parse_views(doc):
    views, authored = [], set()
    for k, v in enumerate(_get(doc, "views", "", list)):
        p = f"views[{k}]"
        vid = str(_get(v, "id", p))
        w = _get(v, "width", p, int)
        h = _get(v, "height", p, int)
        intr = _floats(_get(v, "intrinsics", p), f"{p}.intrinsics", 4)
        ext = _matrix(_get(v, "extrinsics", p), f"{p}.extrinsics")
        depth = labels = None
        if v.get("depth") is not None:
            depth = _floats(v["depth"], f"{p}.depth", w * h).reshape(h, w)
            labels = _ints(_get(v, "labels", p), f"{p}.labels", 2 * w * h).reshape(h, w, 2)
            depth.flags.writeable = False
            labels.flags.writeable = False
            authored.add(vid)
        try:
            views.append(CameraView(vid, tuple(float(x) for x in intr), ext, w, h, depth, labels))
        except DomainError as e:
            raise ScenarioParseError(f"{p}.intrinsics", str(e)) from None
    ids = [v.view_id for v in views]
    if len(set(ids)) != len(ids):
        raise ScenarioParseError("views", "duplicate view ids")
    return views, frozenset(authored)


def _parse_task(doc):
    sec = _get(doc, "task", "", dict)
    subs = []
    for k, s in enumerate(_get(sec, "subtasks", "task", list)):
        p = f"task.subtasks[{k}]"
        ga = s.get("gripper_after")
        if ga is not None:
            if not isinstance(ga, list):
                raise ScenarioParseError(f"{p}.gripper_after", "expected a per-arm list")
            ga = tuple(None if g is None else int(g) for g in ga)
        subs.append(
            Subtask(
                description=str(_get(s, "description", p)),
                target=_get(s, "target", p, int),
                gripper_after=ga,
                home_first=bool(s.get("home_first", False)),
            )
        )
    if not subs:
        raise ScenarioParseError("task.subtasks", "need at least one subtask")
    return TaskScript(str(sec.get("instruction", "")), tuple(subs))


def _parse_selector(doc):
    sec = _get(doc, "selector", "", dict)
    subs = []
    for k, s in enumerate(_get(sec, "subtasks", "selector", list)):
        p = f"selector.subtasks[{k}]"
        views = {}
        for vid, px in _get(s, "views", p, dict).items():
            pts = []
            for j, uv in enumerate(px):
                pts.append(tuple(_floats(uv, f"{p}.views.{vid}[{j}]", 2)))
            views[str(vid)] = tuple(pts)
        off = s.get("tool_offset")
        subs.append(
            SubtaskScript(
                views=views,
                arm=None if s.get("arm") is None else int(s["arm"]),
                tool_offset=None if off is None else _floats(off, f"{p}.tool_offset", 3),
            )
        )
    return SelectorScript(tuple(subs), tuple(str(c) for c in sec.get("tool_categories", ()) or ()))


def _parse_start(doc, robot):
    sec = _get(doc, "start", "", dict)
    base = _floats(_get(sec, "base", "start"), "start.base", 3)
    joints = sec.get("arm_joints")
    if joints is None:
        joints = [arm.home for arm in robot.arms]
    elif not isinstance(joints, list) or len(joints) != robot.n_arms:
        raise ScenarioParseError("start.arm_joints", f"expected {robot.n_arms} joint lists")
    else:
        joints = [_floats(q, f"start.arm_joints[{a}]", robot.arms[a].n_joints) for a, q in enumerate(joints)]
    grip = sec.get("gripper") or [None] * robot.n_arms
    if len(grip) != robot.n_arms:
        raise ScenarioParseError("start.gripper", f"expected {robot.n_arms} entries")
    state = RobotState(base, tuple(joints), tuple(None if g is None else int(g) for g in grip))
    try:
        check_limits(robot, state)
    except DomainError as e:
        raise ScenarioParseError("start.arm_joints", str(e)) from None
    return state


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioParseError("<document>", "expected a mapping at top level")
    schema = _get(doc, "schema", "", str)
    if schema != SCHEMA:
        raise ScenarioParseError("schema", f"unsupported schema {schema!r}, expected {SCHEMA!r}")
    sid = str(_get(doc, "id", ""))
    relations = tuple(str(r) for r in _get(doc, "relations", "", list))
    cloud = _parse_points(doc)
    gsec = _get(doc, "graph", "", dict)
    declared = _get(gsec, "nodes", "graph", list)
    for k, nd in enumerate(declared):
        _get(nd, "id", f"graph.nodes[{k}]", int)
        _get(nd, "category", f"graph.nodes[{k}]")
    edges = []
    for k, e in enumerate(gsec.get("edges") or []):
        if not (isinstance(e, list) and len(e) == 3):
            raise ScenarioParseError(f"graph.edges[{k}]", "expected [a, b, relation]")
        edges.append((int(e[0]), int(e[1]), str(e[2])))
    graph = SceneGraph(build_nodes(cloud.points, cloud.object_ids, declared), tuple(edges), relations)
    unknown = set(np.unique(cloud.object_ids).tolist()) - {n.object_id for n in graph.nodes}
    if unknown:
        raise IntegrityError("points.object_id", f"labels reference undeclared objects {sorted(unknown)}")
    views, authored = _parse_views(doc)
    view_ids = {v.view_id for v in views}
    for k, n in enumerate(graph.nodes):
        missing = set(n.views) - view_ids
        if missing:
            raise IntegrityError(f"graph.nodes[{k}].views", f"unknown views {sorted(missing)}")
    views = tuple(v if v.view_id in authored else render_depth(v, cloud) for v in views)
    robot = _parse_robot(doc)
    start = _parse_start(doc, robot)
    task = _parse_task(doc)
    selector = _parse_selector(doc)
    for k, s in enumerate(task.subtasks):
        if s.target not in graph:
            raise IntegrityError(f"task.subtasks[{k}].target", f"no object {s.target}")
        if s.gripper_after is not None:
            if len(s.gripper_after) != robot.n_arms:
                raise IntegrityError(f"task.subtasks[{k}].gripper_after", f"expected {robot.n_arms} entries")
            for g in s.gripper_after:
                if g is not None and g not in graph:
                    raise IntegrityError(f"task.subtasks[{k}].gripper_after", f"no object {g}")
    for g in start.gripper:
        if g is not None and g not in graph:
            raise IntegrityError("start.gripper", f"no object {g}")
    if len(selector.subtasks) != len(task.subtasks):
        raise IntegrityError("selector.subtasks", f"expected {len(task.subtasks)} entries, got {len(selector.subtasks)}")
    for k, s in enumerate(selector.subtasks):
        missing = set(s.views) - view_ids
        if missing:
            raise IntegrityError(f"selector.subtasks[{k}].views", f"unknown views {sorted(missing)}")
        if s.arm is not None and not 0 <= s.arm < robot.n_arms:
            raise IntegrityError(f"selector.subtasks[{k}].arm", f"arm {s.arm} out of range")
    header = _get(doc, "header", "", dict)
    counts = {
        "n_points": len(cloud),
        "n_nodes": len(graph.nodes),
        "n_views": len(views),
        "n_subtasks": len(task.subtasks),
    }
    for key, val in counts.items():
        if key in header and header[key] != val:
            raise IntegrityError(f"header.{key}", f"declares {header[key]}, document has {val}")
    config = doc.get("config") or {}
    if not isinstance(config, dict):
        raise ScenarioParseError("config", "expected a mapping")
    return Scenario(
        id=sid,
        cloud=cloud,
        graph=graph,
        views=views,
        robot=robot,
        start=start,
        task=task,
        selector=selector,
        config=config,
        truth=doc.get("truth") or {},
        authored_depth=authored,
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ScenarioParseError("<file>", f"{path} does not exist") from None
    try:
        doc = load_yaml(text)
    except yaml.YAMLError as e:
        raise ScenarioParseError("<document>", f"not valid YAML: {e}") from None
    return scenario_from_dict(doc)


# -- saving ----------------------------------------------------------------


def _flat(a):
    return [float(x) for x in np.asarray(a, dtype=float).reshape(-1)]


def robot_to_dict(robot: RobotSpec) -> dict:
    return {
        "base_radius": float(robot.base_radius),
        "base_height": float(robot.base_height),
        "arms": [
            {
                "link_lengths": _flat(arm.link_lengths),
                "joint_axes": [_flat(ax) for ax in arm.joint_axes],
                "joint_limits": [_flat(lim) for lim in arm.joint_limits],
                "r_min": float(arm.r_min),
                "r_max": float(arm.r_max),
                "home": _flat(arm.home),
                "mount": _flat(m),
            }
            for arm, m in zip(robot.arms, robot.arm_mounts)
        ],
    }


def scenario_to_dict(sc: Scenario) -> dict:
    c = sc.cloud
    views = []
    for v in sc.views:
        d = {
            "id": v.view_id,
            "width": v.width,
            "height": v.height,
            "intrinsics": [float(x) for x in v.intrinsics],
            "extrinsics": _flat(v.extrinsics),
        }
        if v.view_id in sc.authored_depth:
            d["depth"] = _flat(v.depth)
            d["labels"] = [int(x) for x in v.pixel_labels.reshape(-1)]
        views.append(d)
    doc = {
        "schema": SCHEMA,
        "id": sc.id,
        "header": {
            "n_points": len(c),
            "n_nodes": len(sc.graph.nodes),
            "n_views": len(sc.views),
            "n_subtasks": len(sc.task.subtasks),
        },
        "relations": list(sc.graph.relations),
        "points": {
            "count": len(c),
            "xyz": _flat(c.points),
            "object_id": [int(x) for x in c.object_ids],
            "part_id": [int(x) for x in c.part_ids],
        },
        "graph": {
            "nodes": [{"id": n.object_id, "category": n.category, "views": list(n.views)} for n in sc.graph.nodes],
            "edges": [[a, b, r] for a, b, r in sc.graph.edges],
        },
        "views": views,
        "robot": robot_to_dict(sc.robot),
        "start": sc.start.to_dict(),
        "task": sc.task.to_dict(),
        "selector": sc.selector.to_dict(),
    }
    if sc.config:
        doc["config"] = sc.config
    if sc.truth:
        doc["truth"] = sc.truth
    return doc


def save_scenario(sc: Scenario, path) -> None:
    Path(path).write_text(dump_yaml(scenario_to_dict(sc)), encoding="utf-8")
