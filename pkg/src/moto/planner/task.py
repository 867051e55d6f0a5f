"""Scripted task decomposition (stand-in for LLM task planning)."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Subtask:
    description: str
    target: int
    # Per-arm gripper contents after the subtask succeeds (object id or None);
    # None for the whole field means "unchanged".
    gripper_after: tuple[int | None, ...] | None = None
    home_first: bool = False


@dataclass(frozen=True)
class TaskScript:
    instruction: str
    subtasks: tuple[Subtask, ...]

    def to_dict(self) -> dict:
        out = []
        for s in self.subtasks:
            d = {"description": s.description, "target": s.target}
            if s.gripper_after is not None:
                d["gripper_after"] = list(s.gripper_after)
            if s.home_first:
                d["home_first"] = True
            out.append(d)
        return {"instruction": self.instruction, "subtasks": out}
