"""Scene graph: object nodes and spatial-relation edges."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from moto.errors import IntegrityError


@dataclass(frozen=True)
class ObjectNode:
    object_id: int
    category: str
    centroid: np.ndarray
    point_indices: np.ndarray
    views: tuple[str, ...] = ()


@dataclass(frozen=True)
class SceneGraph:
    nodes: tuple[ObjectNode, ...]
    edges: tuple[tuple[int, int, str], ...] = ()
    relations: tuple[str, ...] = ("inside", "on_top_of", "next_to")
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for k, n in enumerate(self.nodes):
            if n.object_id in self._by_id:
                raise IntegrityError(f"graph.nodes[{k}].id", f"duplicate object id {n.object_id}")
            self._by_id[n.object_id] = n
        for k, (a, b, rel) in enumerate(self.edges):
            for end in (a, b):
                if end not in self._by_id:
                    raise IntegrityError(f"graph.edges[{k}]", f"references missing node {end}")
            if rel not in self.relations:
                raise IntegrityError(f"graph.edges[{k}]", f"relation {rel!r} not in vocabulary {list(self.relations)}")

    def node(self, object_id: int) -> ObjectNode:
        try:
            return self._by_id[object_id]
        except KeyError:
            raise IntegrityError("object_id", f"no node with id {object_id}") from None

    def __contains__(self, object_id) -> bool:
        return object_id in self._by_id

    def category(self, object_id: int | None) -> str:
        return "empty" if object_id is None else self.node(object_id).category


def build_nodes(points: np.ndarray, object_ids: np.ndarray, declared: list[dict]) -> tuple[ObjectNode, ...]:
    """Attach point indices and centroids to declared nodes."""
    nodes = []
    for k, d in enumerate(declared):
        idx = np.flatnonzero(object_ids == d["id"])
        if idx.size == 0:
            raise IntegrityError(f"graph.nodes[{k}]", f"object {d['id']} has no points")
        idx.flags.writeable = False
        centroid = points[idx].mean(axis=0)
        centroid.flags.writeable = False
        nodes.append(ObjectNode(int(d["id"]), str(d["category"]), centroid, idx, tuple(d.get("views", ()))))
    return tuple(nodes)
