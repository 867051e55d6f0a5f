"""Arm keypoint (AK) extraction and arm choice for dual-arm robots."""
from __future__ import annotations

import numpy as np

from moto.errors import ConfigurationError, DomainError
from moto.keypoints.voting import ARM, Keypoint3D
from moto.robot.kinematics import arm_frames


def contact_offset(graph, state, arm_index: int, entry, tool_categories=()) -> np.ndarray | None:
    """End-effector-frame offset of the contact point, or None for the EE itself."""
    held = state.gripper[arm_index]
    if held is None:
        return None
    offset = None if entry is None else entry.tool_offset
    if offset is None and graph.category(held) in tool_categories:
        raise ConfigurationError(f"arm {arm_index} holds tool {graph.category(held)!r} but no tool offset is scripted")
    return offset


def ak_position(spec, state, arm_index: int, offset=None) -> np.ndarray:
    """World AK: E * FK_local, then the contact offset in the EE frame."""
    T = arm_frames(spec, state, arm_index)[-1]
    if offset is None:
        return T[:3, 3].copy()
    return T[:3, :3] @ np.asarray(offset, dtype=float) + T[:3, 3]


def arm_keypoint(spec, state, arm_index: int, script, subtask_index: int, graph) -> Keypoint3D:
    entry = script.for_subtask(subtask_index)
    offset = contact_offset(graph, state, arm_index, entry, script.tool_categories)
    pos = ak_position(spec, state, arm_index, offset)
    src = {"arm": arm_index, "offset": None if offset is None else [float(x) for x in offset]}
    return Keypoint3D(pos, ARM, src)


def choose_arm(spec, state, tk: Keypoint3D, script=None, subtask_index: int | None = None) -> int:
    """Pick the arm that should touch TK.

    Scripted override first; otherwise empty grippers beat occupied ones,
    then the nearer end effector wins, ties to arm 0.
    """
    if spec.n_arms == 1:
        return 0
    if script is not None and subtask_index is not None:
        entry = script.for_subtask(subtask_index)
        if entry.arm is not None:
            if not 0 <= entry.arm < spec.n_arms:
                raise DomainError(f"scripted arm {entry.arm} out of range")
            return entry.arm
    tkp = np.asarray(tk.position, dtype=float)
    keys = []
    for a in range(spec.n_arms):
        d = float(np.linalg.norm(ak_position(spec, state, a) - tkp))
        keys.append((state.gripper[a] is not None, d, a))
    return min(keys)[2]
