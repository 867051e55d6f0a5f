"""Keypoint selection behind a pluggable selector (VLM stand-in)."""
from __future__ import annotations

import math
from typing import Protocol, Sequence

from moto.errors import ConfigurationError, DomainError


class Selector(Protocol):
    """Call contract for a keypoint selector.

    Given the subtask text, the proposal pixels drawn on the view, and the
    view itself (image handle), return proposal indices ranked from most
    to least relevant. A live VLM client implements the same method.
    """

    def rank(self, subtask_index: int, subtask_text: str, view, pixels: Sequence[tuple[int, int]]) -> list[int]: ...


class ScriptedSelector:
    """Ranks proposals by pixel distance to scripted interaction pixels.

    Ties break on (u, v) ascending.
    """

    def __init__(self, script):
        self.script = script

    def rank(self, subtask_index, subtask_text, view, pixels):
        entry = self.script.for_subtask(subtask_index)
        truth = entry.views.get(view.view_id)
        if not truth:
            raise ConfigurationError(f"selector script has no pixels for subtask {subtask_index}, view {view.view_id!r}")

        def key(i):
            u, v = pixels[i]
            return (min(math.hypot(u - tu, v - tv) for tu, tv in truth), u, v)

        return sorted(range(len(pixels)), key=key)


def select_keypoints(selector: Selector, subtask_index: int, subtask_text: str, view, proposals, V: int):
    """Top-V proposals in the selector's rank order (all of them if fewer)."""
    if not proposals:
        raise DomainError("no proposals to select from")
    ranked = selector.rank(subtask_index, subtask_text, view, [p.pixel for p in proposals])
    return [proposals[i] for i in ranked[:V]]
