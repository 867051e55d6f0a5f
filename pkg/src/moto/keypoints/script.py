"""Scripted selector data: what a VLM would pick, fixed in the scenario."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SubtaskScript:
    # view id -> ranked ground-truth interaction pixels (u, v)
    views: dict[str, tuple[tuple[float, float], ...]]
    arm: int | None = None
    tool_offset: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class SelectorScript:
    subtasks: tuple[SubtaskScript, ...]
    tool_categories: tuple[str, ...] = field(default=())

    def for_subtask(self, k: int) -> SubtaskScript:
        from moto.errors import ConfigurationError

        if not 0 <= k < len(self.subtasks):
            raise ConfigurationError(f"selector script has no entry for subtask {k}")
        return self.subtasks[k]

    def to_dict(self) -> dict:
        subs = []
        for s in self.subtasks:
            d = {"views": {v: [[float(c) for c in p] for p in px] for v, px in s.views.items()}}
            if s.arm is not None:
                d["arm"] = s.arm
            if s.tool_offset is not None:
                d["tool_offset"] = [float(x) for x in s.tool_offset]
            subs.append(d)
        out = {"subtasks": subs}
        if self.tool_categories:
            out["tool_categories"] = list(self.tool_categories)
        return out
