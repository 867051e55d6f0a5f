"""Structured text description of a scene graph for a language-model planner.

The core loop does not consume this; it exists so a live planner can be
mounted on the same scene data the scripted task uses.
"""
from __future__ import annotations


def describe_scene(graph, instruction: str = "") -> str:
    lines = ["objects:"]
    for n in sorted(graph.nodes, key=lambda n: n.object_id):
        x, y, z = (float(c) for c in n.centroid)
        lines.append(f"  - id: {n.object_id}, category: {n.category}, position: [{x:.3f}, {y:.3f}, {z:.3f}]")
    lines.append("relations:")
    if not graph.edges:
        lines.append("  []")
    for a, b, rel in graph.edges:
        lines.append(f"  - {graph.category(a)}({a}) {rel} {graph.category(b)}({b})")
    if instruction:
        lines.append(f"instruction: {instruction}")
        lines.append("reply with an ordered list of (subtask description, target object id).")
    return "\n".join(lines) + "\n"
