"""Procedural synthetic scenes: furniture, target objects, cameras and tasks.

Everything is built from shell point samples of boxes and cylinders, so a
scene is a plain labeled point cloud. Each target gets cameras from the
open side, and the scripted selector's truth pixel is the projection of a
designed interaction point. ``certify`` runs the keypoint pipeline and the
grid docking search so a scene only enters the corpus when a docking pose
provably exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from moto.geometry import look_at
from moto.scene.camera import CameraView
from moto.scene.scenario import SCHEMA

TABLE_TOP = 0.75
IMAGE_W, IMAGE_H = 80, 60
FOCAL = 70.0
VIEW_DIST = 0.8
VIEW_ELEV = math.radians(30.0)
# camera azimuths relative to the open side of the target, degrees
VIEW_AZIMUTHS = (-70.0, -25.0, 25.0, 70.0)
RELATIONS = ["inside", "on_top_of", "next_to"]
_COORD_DECIMALS = 4


def _grid(a0: float, a1: float, spacing: float) -> np.ndarray:
    n = max(2, int(math.ceil((a1 - a0) / spacing)) + 1)
    return np.linspace(a0, a1, n)


def box_shell(center, size, spacing: float) -> np.ndarray:
    """Points on the six faces of an axis-aligned box."""
    c = np.asarray(center, dtype=float)
    h = 0.5 * np.asarray(size, dtype=float)
    xs = _grid(-h[0], h[0], spacing)
    ys = _grid(-h[1], h[1], spacing)
    zs = _grid(-h[2], h[2], spacing)
    faces = []
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    for z in (-h[2], h[2]):
        faces.append(np.column_stack([X.ravel(), Y.ravel(), np.full(X.size, z)]))
    X, Z = np.meshgrid(xs, zs[1:-1], indexing="ij")
    for y in (-h[1], h[1]):
        faces.append(np.column_stack([X.ravel(), np.full(X.size, y), Z.ravel()]))
    Y, Z = np.meshgrid(ys[1:-1], zs[1:-1], indexing="ij")
    for x in (-h[0], h[0]):
        faces.append(np.column_stack([np.full(Y.size, x), Y.ravel(), Z.ravel()]))
    return np.vstack(faces) + c


def cylinder_shell(base_center, radius: float, height: float, spacing: float, top=True, bottom=True) -> np.ndarray:
    """Side wall plus optional end caps of a vertical cylinder."""
    b = np.asarray(base_center, dtype=float)
    n_ang = max(6, int(math.ceil(2 * math.pi * radius / spacing)))
    ang = 2 * math.pi * np.arange(n_ang) / n_ang
    zs = _grid(0.0, height, spacing)
    A, Z = np.meshgrid(ang, zs, indexing="ij")
    parts = [np.column_stack([radius * np.cos(A.ravel()), radius * np.sin(A.ravel()), Z.ravel()])]
    caps = [z for z, on in ((0.0, bottom), (height, top)) if on]
    for z in caps:
        for r in np.arange(radius - spacing, 0.0, -spacing):
            m = max(3, int(math.ceil(2 * math.pi * r / spacing)))
            a = 2 * math.pi * np.arange(m) / m
            parts.append(np.column_stack([r * np.cos(a), r * np.sin(a), np.full(m, z)]))
        parts.append(np.array([[0.0, 0.0, z]]))
    return np.vstack(parts) + b


def handle_arc(center, direction: float, radius: float, spacing: float) -> np.ndarray:
    """Vertical half ring sticking out of a surface in the xy ``direction`` (rad)."""
    n = max(5, int(math.ceil(math.pi * radius / spacing)))
    t = np.linspace(-math.pi / 2, math.pi / 2, n)
    out = radius * np.cos(t)
    z = radius * np.sin(t)
    d = np.array([math.cos(direction), math.sin(direction)])
    return np.column_stack([center[0] + out * d[0], center[1] + out * d[1], center[2] + z])


@dataclass
class SceneBuilder:
    """Accumulates labeled points, graph nodes and views for one scenario."""

    points: list = field(default_factory=list)
    object_ids: list = field(default_factory=list)
    part_ids: list = field(default_factory=list)
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    views: list = field(default_factory=list)
    _next: int = 1

    def add_object(self, category: str, parts) -> int:
        oid = self._next
        self._next += 1
        for part, pts in enumerate(parts):
            pts = np.round(np.asarray(pts, dtype=float).reshape(-1, 3), _COORD_DECIMALS)
            self.points.append(pts)
            self.object_ids.append(np.full(len(pts), oid, dtype=int))
            self.part_ids.append(np.full(len(pts), part, dtype=int))
        self.nodes.append({"id": oid, "category": category, "views": []})
        return oid

    def node(self, oid: int) -> dict:
        return next(n for n in self.nodes if n["id"] == oid)

    def add_views(self, oid: int, look_target, open_dir: float, azimuths=VIEW_AZIMUTHS) -> list[CameraView]:
        """Cameras around ``look_target`` spread about the open direction."""
        out = []
        t = np.asarray(look_target, dtype=float)
        for k, az in enumerate(azimuths):
            a = open_dir + math.radians(az)
            eye = t + VIEW_DIST * np.array(
                [math.cos(a) * math.cos(VIEW_ELEV), math.sin(a) * math.cos(VIEW_ELEV), math.sin(VIEW_ELEV)]
            )
            vid = f"o{oid}_v{k}"
            view = CameraView(vid, (FOCAL, FOCAL, IMAGE_W / 2, IMAGE_H / 2), look_at(eye, t), IMAGE_W, IMAGE_H)
            self.views.append(view)
            self.node(oid)["views"].append(vid)
            out.append(view)
        return out

    def cloud_arrays(self):
        return np.vstack(self.points), np.concatenate(self.object_ids), np.concatenate(self.part_ids)


# -- furniture and objects -------------------------------------------------------


def add_table(b: SceneBuilder, center_xy, size_xy, top: float = TABLE_TOP, spacing: float = 0.03, category="table") -> int:
    cx, cy = center_xy
    sx, sy = size_xy
    slab = box_shell((cx, cy, top - 0.02), (sx, sy, 0.04), spacing)
    legs = []
    for ex in (-1, 1):
        for ey in (-1, 1):
            lx, ly = cx + ex * (sx / 2 - 0.04), cy + ey * (sy / 2 - 0.04)
            legs.append(box_shell((lx, ly, (top - 0.04) / 2), (0.04, 0.04, top - 0.04), spacing))
    return b.add_object(category, [slab, np.vstack(legs)])


def add_crate(b: SceneBuilder, center_xy, size, spacing: float = 0.05, category="crate") -> int:
    sx, sy, sz = size
    return b.add_object(category, [box_shell((center_xy[0], center_xy[1], sz / 2), (sx, sy, sz), spacing)])


def add_bottle(b: SceneBuilder, xy, z0: float) -> tuple[int, np.ndarray]:
    """Bottle: body and a narrow neck; the interaction point is the upper neck."""
    body_h, neck_h = 0.16, 0.08
    body = cylinder_shell((xy[0], xy[1], z0), 0.035, body_h, 0.01, top=True, bottom=False)
    neck = cylinder_shell((xy[0], xy[1], z0 + body_h), 0.015, neck_h, 0.01, top=True, bottom=False)
    oid = b.add_object("bottle", [body, neck])
    return oid, np.array([xy[0], xy[1], z0 + body_h + 0.7 * neck_h])


def add_mug(b: SceneBuilder, xy, z0: float, handle_dir: float) -> tuple[int, np.ndarray]:
    """Tall mug with a side handle facing ``handle_dir``; interaction point on the handle."""
    h, r = 0.14, 0.045
    body = cylinder_shell((xy[0], xy[1], z0), r, h, 0.01, top=False, bottom=True)
    c = np.array([xy[0] + r * math.cos(handle_dir), xy[1] + r * math.sin(handle_dir), z0 + 0.6 * h])
    handle = handle_arc(c, handle_dir, 0.03, 0.008)
    oid = b.add_object("mug", [body, handle])
    tip = c + np.array([0.03 * math.cos(handle_dir), 0.03 * math.sin(handle_dir), 0.0])
    return oid, tip


def add_basket(b: SceneBuilder, xy, z0: float, rim_dir: float = 0.0) -> tuple[int, np.ndarray]:
    """Open basket with a separate rim part; interaction point on the rim facing ``rim_dir``."""
    h, r = 0.14, 0.09
    wall = cylinder_shell((xy[0], xy[1], z0), r, h - 0.015, 0.015, top=False, bottom=True)
    n = int(math.ceil(2 * math.pi * r / 0.008))
    a = 2 * math.pi * np.arange(n) / n
    rim = np.vstack([np.column_stack([xy[0] + r * np.cos(a), xy[1] + r * np.sin(a), np.full(n, z0 + z)]) for z in (h - 0.008, h)])
    oid = b.add_object("basket", [wall, rim])
    return oid, np.array([xy[0] + r * math.cos(rim_dir), xy[1] + r * math.sin(rim_dir), z0 + h])


def add_cabinet(b: SceneBuilder, center_xy, size, front_dir: float) -> tuple[int, int, np.ndarray]:
    """Cabinet plus a separate handle object on its front face."""
    sx, sy, sz = size
    cab = b.add_object("cabinet", [box_shell((center_xy[0], center_xy[1], sz / 2), size, 0.04)])
    half = 0.5 * (sx if abs(math.cos(front_dir)) > 0.5 else sy)
    d = np.array([math.cos(front_dir), math.sin(front_dir)])
    z = 0.95
    base = np.array([center_xy[0], center_xy[1]]) + (half + 0.12) * d
    perp = np.array([-d[1], d[0]])
    bar = np.array([base + s * perp for s in np.linspace(-0.06, 0.06, 13)])
    bar = np.column_stack([bar, np.full(len(bar), z)])
    posts = []
    for s in (-0.06, 0.06):
        for t in np.linspace(0.0, 0.12, 13):
            p = np.array([center_xy[0], center_xy[1]]) + (half + t) * d + s * perp
            posts.append([p[0], p[1], z])
    handle = b.add_object("handle", [bar, np.array(posts)])
    b.edges.append([handle, cab, "on_top_of"])
    return cab, handle, np.array([base[0], base[1], z])


# -- assembling a scenario document ---------------------------------------------------


@dataclass
class Target:
    oid: int
    tk: np.ndarray
    description: str
    gripper_after: list | None = None
    arm: int | None = None


def truth_pixels(view: CameraView, tk) -> list:
    u, v, z = view.project(np.asarray(tk, dtype=float).reshape(1, 3))
    return [[round(float(u[0]), 3), round(float(v[0]), 3)]]


def scenario_document(sid: str, b: SceneBuilder, robot: str, start, targets: list[Target], instruction: str, config=None, gripper=None) -> dict:
    xyz, oid, pid = b.cloud_arrays()
    views = {v.view_id: v for v in b.views}
    sel = []
    for t in targets:
        node = b.node(t.oid)
        entry = {"views": {vid: truth_pixels(views[vid], t.tk) for vid in node["views"]}}
        if t.arm is not None:
            entry["arm"] = t.arm
        sel.append(entry)
    subtasks = []
    for t in targets:
        d = {"description": t.description, "target": t.oid}
        if t.gripper_after is not None:
            d["gripper_after"] = t.gripper_after
        subtasks.append(d)
    doc = {
        "schema": SCHEMA,
        "id": sid,
        "header": {"n_points": int(len(xyz)), "n_nodes": len(b.nodes), "n_views": len(b.views), "n_subtasks": len(targets)},
        "relations": RELATIONS,
        "points": {
            "count": int(len(xyz)),
            "xyz": [float(x) for x in xyz.ravel()],
            "object_id": [int(x) for x in oid],
            "part_id": [int(x) for x in pid],
        },
        "graph": {"nodes": b.nodes, "edges": b.edges},
        "views": [
            {
                "id": v.view_id,
                "width": v.width,
                "height": v.height,
                "intrinsics": [float(x) for x in v.intrinsics],
                "extrinsics": [round(float(x), 12) for x in v.extrinsics.ravel()],
            }
            for v in b.views
        ],
        "robot": {"preset": robot},
        "start": {"base": [float(x) for x in start]},
        "task": {"instruction": instruction, "subtasks": subtasks},
        "selector": {"subtasks": sel},
        "truth": {"designed_tk": [[float(c) for c in t.tk] for t in targets]},
    }
    if gripper is not None:
        doc["start"]["gripper"] = gripper
    if config:
        doc["config"] = config
    return doc


# -- layouts -------------------------------------------------------------------------


def _place_on_table(b, kind: str, table_xy, table_size, edge_dir: float, inset: float, lateral: float, rng):
    """Put a target object near the table edge facing ``edge_dir``."""
    d = np.array([math.cos(edge_dir), math.sin(edge_dir)])
    perp = np.array([-d[1], d[0]])
    half = 0.5 * (table_size[0] if abs(d[0]) > 0.5 else table_size[1])
    xy = np.asarray(table_xy, dtype=float) + (half - inset) * d + lateral * perp
    if kind == "bottle":
        oid, tk = add_bottle(b, xy, TABLE_TOP)
    elif kind == "mug":
        oid, tk = add_mug(b, xy, TABLE_TOP + 0.02, edge_dir + rng.uniform(-0.6, 0.6))
    else:
        oid, tk = add_basket(b, xy, TABLE_TOP, edge_dir)
    return oid, tk


def _yaw_towards(frm, to) -> float:
    return math.atan2(to[1] - frm[1], to[0] - frm[0])


def layout_open(sid, rng, kind="bottle", robot="default_single_arm", dist=None):
    """One table, one target, free floor."""
    b = SceneBuilder()
    edge = rng.uniform(-math.pi, math.pi)
    size = (rng.uniform(0.8, 1.2), rng.uniform(0.6, 0.8))
    oid, tk = _place_on_table(b, kind, (0.0, 0.0), size, 0.0, rng.uniform(0.1, 0.14), rng.uniform(-0.15, 0.15), rng)
    table = add_table(b, (0.0, 0.0), size)
    b.edges.append([oid, table, "on_top_of"])
    _rotate_all(b, edge)
    tk = _rot(tk, edge)
    b.add_views(oid, tk, edge)
    dist = rng.uniform(1.0, 2.2) if dist is None else dist
    az = edge + rng.uniform(-0.8, 0.8)
    start_xy = tk[:2] + (size[0] / 2 + dist) * np.array([math.cos(az), math.sin(az)])
    start = (*start_xy, _yaw_towards(start_xy, tk) + rng.uniform(-1.0, 1.0))
    t = Target(oid, tk, f"reach the {kind}")
    return b, robot, start, [t], f"go to the {kind} on the table"


def layout_corridor(sid, rng, kind="bottle"):
    """Target behind a tall crate: the straight line to it is blocked."""
    b = SceneBuilder()
    size = (1.0, 0.7)
    oid, tk = _place_on_table(b, kind, (0.0, 0.0), size, 0.0, 0.12, rng.uniform(-0.1, 0.1), rng)
    table = add_table(b, (0.0, 0.0), size)
    b.edges.append([oid, table, "on_top_of"])
    gap = rng.uniform(1.1, 1.4)
    crate = add_crate(b, (size[0] / 2 + gap, rng.uniform(-0.15, 0.15)), (0.4, rng.uniform(0.9, 1.2), 1.2))
    b.edges.append([crate, table, "next_to"])
    b.add_views(oid, tk, 0.0, azimuths=(-60.0, -20.0, 20.0, 60.0))
    start_xy = np.array([size[0] / 2 + gap + rng.uniform(1.0, 1.4), rng.uniform(-0.2, 0.2)])
    start = (*start_xy, math.pi + rng.uniform(-0.5, 0.5))
    return b, "default_single_arm", start, [Target(oid, tk, f"reach the {kind} behind the crate")], f"get the {kind} past the crate"


def layout_cluttered(sid, rng, kind="mug", robot="default_single_arm"):
    """Target on a table with several low boxes scattered around it."""
    b = SceneBuilder()
    size = (1.2, 0.8)
    oid, tk = _place_on_table(b, kind, (0.0, 0.0), size, 0.0, 0.12, rng.uniform(-0.2, 0.2), rng)
    table = add_table(b, (0.0, 0.0), size)
    b.edges.append([oid, table, "on_top_of"])
    placed = 0
    tries = 0
    while placed < 3 and tries < 100:
        tries += 1
        c = np.array([rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0)])
        # keep a docking corridor of ~0.9 m in front of the target free
        if abs(c[1] - tk[1]) < 0.75 and c[0] < 1.7:
            continue
        if np.max(np.abs(c)) < 0.95:
            continue
        crate = add_crate(b, c, (rng.uniform(0.25, 0.5), rng.uniform(0.25, 0.5), rng.uniform(0.4, 0.9)))
        b.edges.append([crate, table, "next_to"])
        placed += 1
    b.add_views(oid, tk, 0.0)
    start_xy = np.array([rng.uniform(2.2, 3.0), rng.uniform(-0.4, 0.4)])
    start = (*start_xy, math.pi + rng.uniform(-0.6, 0.6))
    return b, robot, start, [Target(oid, tk, f"reach the {kind} among the boxes")], f"fetch the {kind}"


def layout_cabinet(sid, rng):
    """Handle on the front of a cabinet."""
    b = SceneBuilder()
    front = rng.uniform(-math.pi, math.pi)
    cab, handle, tk = add_cabinet(b, (0.0, 0.0), (0.5, 0.5, 1.1), 0.0)
    _rotate_all(b, front)
    tk = _rot(tk, front)
    b.add_views(handle, tk, front, azimuths=(-60.0, -20.0, 20.0, 60.0))
    az = front + rng.uniform(-0.7, 0.7)
    start_xy = tk[:2] + rng.uniform(1.0, 2.0) * np.array([math.cos(az), math.sin(az)])
    start = (*start_xy, _yaw_towards(start_xy, tk) + rng.uniform(-1.2, 1.2))
    return b, "default_single_arm", start, [Target(handle, tk, "grasp the cabinet handle")], "open the cabinet"


def layout_pick_place(sid, rng, robot="default_single_arm"):
    """Pick an object from one table, then reach a basket on another."""
    b = SceneBuilder()
    s1 = (1.0, 0.7)
    obj, tk1 = _place_on_table(b, "bottle", (0.0, 0.0), s1, 0.0, 0.12, rng.uniform(-0.1, 0.1), rng)
    t1 = add_table(b, (0.0, 0.0), s1)
    b.edges.append([obj, t1, "on_top_of"])
    sep = rng.uniform(2.4, 3.0)
    s2 = (0.9, 0.7)
    c2 = (0.0, sep)
    bas, tk2 = _place_on_table(b, "basket", c2, s2, 0.0, 0.14, 0.0, rng)
    t2 = add_table(b, c2, s2)
    b.edges.append([bas, t2, "on_top_of"])
    b.add_views(obj, tk1, 0.0)
    b.add_views(bas, tk2, 0.0)
    start_xy = np.array([rng.uniform(1.2, 1.6), rng.uniform(-0.8, -0.3)])
    start = (*start_xy, math.pi / 2 + rng.uniform(-0.5, 0.5))
    n_arms = 2 if "dual" in robot else 1
    hold = [obj] + [None] * (n_arms - 1)
    targets = [
        Target(obj, tk1, "pick up the bottle", gripper_after=hold, arm=0 if n_arms > 1 else None),
        Target(bas, tk2, "put the bottle in the basket", gripper_after=[None] * n_arms, arm=0 if n_arms > 1 else None),
    ]
    return b, robot, start, targets, "move the bottle into the basket"


def layout_serve(sid, rng):
    """Three subtasks across two tables: mug, bottle, then back to the mug table's basket."""
    b = SceneBuilder()
    s1 = (1.2, 0.8)
    mug, tk1 = _place_on_table(b, "mug", (0.0, 0.0), s1, 0.0, 0.12, 0.2, rng)
    bas, tk3 = _place_on_table(b, "basket", (0.0, 0.0), s1, 0.0, 0.14, -0.28, rng)
    t1 = add_table(b, (0.0, 0.0), s1)
    b.edges += [[mug, t1, "on_top_of"], [bas, t1, "on_top_of"], [mug, bas, "next_to"]]
    s2 = (0.9, 0.7)
    c2 = (0.2, 2.6)
    bot, tk2 = _place_on_table(b, "bottle", c2, s2, 0.0, 0.12, 0.0, rng)
    t2 = add_table(b, c2, s2)
    b.edges.append([bot, t2, "on_top_of"])
    b.add_views(mug, tk1, 0.0)
    b.add_views(bot, tk2, 0.0)
    b.add_views(bas, tk3, 0.0)
    start_xy = np.array([1.4, 1.2])
    start = (*start_xy, -math.pi / 2)
    targets = [
        Target(mug, tk1, "pick up the mug", gripper_after=[mug]),
        Target(bot, tk2, "pour water from the bottle", gripper_after=[mug]),
        Target(bas, tk3, "place the mug in the basket", gripper_after=[None]),
    ]
    return b, "default_single_arm", start, targets, "serve a cup of water"


def _rot(p, yaw):
    c, s = math.cos(yaw), math.sin(yaw)
    p = np.asarray(p, dtype=float).copy()
    p[..., 0], p[..., 1] = c * p[..., 0] - s * p[..., 1], s * p[..., 0] + c * p[..., 1]
    return p


def _rotate_all(b: SceneBuilder, yaw: float) -> None:
    b.points = [np.round(_rot(p, yaw), _COORD_DECIMALS) for p in b.points]


LAYOUTS = {
    "open": layout_open,
    "corridor": layout_corridor,
    "cluttered": layout_cluttered,
    "cabinet": layout_cabinet,
    "pick_place": layout_pick_place,
    "serve": layout_serve,
}


def build(sid: str, layout: str, seed: int, **kw) -> dict:
    rng = np.random.default_rng(seed)
    b, robot, start, targets, instruction = LAYOUTS[layout](sid, rng, **kw)
    doc = scenario_document(sid, b, robot, start, targets, instruction)
    doc["truth"]["layout"] = layout
    doc["truth"]["seed"] = int(seed)
    return doc


# -- certification ----------------------------------------------------------------------


def certify(doc: dict, config=None, spacing: float = 0.05) -> dict:
    """Check a scenario: clear start, TK per subtask, and a grid-proven docking pose.

    Returns a summary dict; ``ok`` is False when any check fails.
    """
    from moto.config import RunConfig
    from moto.costs import CostContext, total_cost
    from moto.keypoints import choose_arm, contact_offset
    from moto.planner.feasibility import grid_docking_search
    from moto.planner.plan import generate_target_keypoint
    from moto.scene.scenario import scenario_from_dict

    sc = scenario_from_dict(doc)
    cfg = config or RunConfig.resolve(sc.config)
    out = {"ok": True, "subtasks": []}
    state = sc.start
    departure = None
    for k, sub in enumerate(sc.task.subtasks):
        vote = generate_target_keypoint(sc, k, cfg)
        if vote.tk is None:
            out["ok"] = False
            out["subtasks"].append({"subtask": k, "error": "no consensus"})
            continue
        arm = choose_arm(sc.robot, state, vote.tk, sc.selector, k)
        offset = contact_offset(sc.graph, state, arm, sc.selector.for_subtask(k), sc.selector.tool_categories)
        held = frozenset(g for g in state.gripper if g is not None)
        dep = departure if departure is not None and departure[0] != sub.target else None
        ctx = CostContext(sc.robot, sc.cloud, vote.tk.position, arm, offset, sub.target, held, cfg.weights, dep)
        if k == 0:
            b0 = total_cost(state, state, ctx)
            out["start_collision"] = b0.collision
            out["start_distance"] = b0.dist
            if b0.collision > 0:
                out["ok"] = False
        rep = grid_docking_search(ctx, state, spacing=spacing)
        entry = {
            "subtask": k,
            "tk_index": vote.tk.source["index"],
            "tk_error": float(np.linalg.norm(vote.tk.position - np.asarray(sc.truth["designed_tk"][k]))),
            "feasible": rep.feasible,
            "checked": rep.checked,
        }
        if rep.feasible:
            entry["dock_base"] = [round(float(x), 6) for x in rep.first.base]
            state = rep.first
            departure = (sub.target, vote.tk.position)
            if sub.gripper_after is not None:
                state = state.with_gripper(sub.gripper_after)
        else:
            out["ok"] = False
        out["subtasks"].append(entry)
    return out


# Fixed recipe for the committed 20-scene corpus: (layout, kwargs).
CORPUS_RECIPE = [
    ("open", {"kind": "bottle"}),
    ("open", {"kind": "mug"}),
    ("open", {"kind": "basket"}),
    ("open", {"kind": "bottle", "robot": "default_dual_arm"}),
    ("open", {"kind": "mug", "robot": "default_dual_arm"}),
    ("open", {"kind": "bottle", "dist": 3.0}),
    ("corridor", {"kind": "bottle"}),
    ("corridor", {"kind": "mug"}),
    ("corridor", {"kind": "basket"}),
    ("cluttered", {"kind": "mug"}),
    ("cluttered", {"kind": "bottle"}),
    ("cluttered", {"kind": "basket", "robot": "default_dual_arm"}),
    ("cabinet", {}),
    ("cabinet", {}),
    ("cabinet", {}),
    ("pick_place", {}),
    ("pick_place", {"robot": "default_dual_arm"}),
    ("serve", {}),
    ("open", {"kind": "basket", "robot": "default_dual_arm"}),
    ("cluttered", {"kind": "mug"}),
]


def corpus_documents(base_seed: int = 100) -> list[dict]:
    docs = []
    for i, (layout, kw) in enumerate(CORPUS_RECIPE):
        docs.append(build(f"c{i:02d}_{layout}", layout, base_seed + i, **kw))
    return docs


def minimal_document() -> dict:
    """Smallest useful scenario: one object, one view, a 2-link planar arm."""
    b = SceneBuilder()
    oid = b.add_object("block", [box_shell((0.45, 0.0, 0.5), (0.04, 0.04, 0.04), 0.02)])
    b.add_views(oid, (0.45, 0.0, 0.5), math.pi, azimuths=(0.0,))
    doc = scenario_document("minimal", b, "default_single_arm", (0.0, 0.0, 0.0), [Target(oid, np.array([0.43, 0.0, 0.5]), "touch the block")], "touch the block")
    doc["robot"] = {
        "base_radius": 0.1,
        "base_height": 0.2,
        "arms": [
            {
                "link_lengths": [0.3, 0.2],
                "joint_axes": [[0, 0, 1], [0, 0, 1]],
                "joint_limits": [[-3.0, 3.0], [-3.0, 3.0]],
                "r_min": 0.1,
                "r_max": 0.5,
                "home": [0.0, 0.0],
                "mount": [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0.5, 0, 0, 0, 1],
            }
        ],
    }
    doc["start"] = {"base": [-0.5, 0.0, 0.0], "arm_joints": [[0.0, 0.0]]}
    return doc


def docked_document(seed: int = 7) -> dict:
    """An open-floor scene whose start pose is already a certified docking pose."""
    doc = build("docked_start", "open", seed, kind="bottle")
    rep = certify(doc)
    from moto.scene.scenario import scenario_from_dict
    from moto.config import RunConfig
    from moto.costs import CostContext
    from moto.planner.feasibility import grid_docking_search
    from moto.planner.plan import generate_target_keypoint

    sc = scenario_from_dict(doc)
    cfg = RunConfig.resolve(sc.config)
    tk = generate_target_keypoint(sc, 0, cfg).tk
    ctx = CostContext(sc.robot, sc.cloud, tk.position, 0, None, sc.task.subtasks[0].target, frozenset(), cfg.weights)
    dock = grid_docking_search(ctx, sc.start).first
    if dock is None or not rep["ok"]:
        raise RuntimeError("docked scenario has no certified docking pose")
    doc["start"] = {"base": [float(x) for x in dock.base], "arm_joints": [[float(x) for x in q] for q in dock.arm_joints]}
    return doc


def bundled_documents() -> dict[str, dict]:
    """Named scenarios shipped with the package."""
    docs = {
        "kitchen_cup": build("kitchen_cup", "open", 11, kind="mug"),
        "corridor_block": build("corridor_block", "corridor", 12, kind="bottle"),
        "pick_place_2obj": build("pick_place_2obj", "pick_place", 13),
        "serve_water": build("serve_water", "serve", 14),
        "docked_start": docked_document(),
        "minimal": minimal_document(),
    }
    docs["kitchen_cup"]["task"]["instruction"] = "bring me the mug from the kitchen table"
    return docs
