"""Interaction keypoints: proposals, selection, voting, arm keypoints."""
from moto.keypoints.arm import ak_position, arm_keypoint, choose_arm, contact_offset
from moto.keypoints.features import FEATURE_DIM, SyntheticFeatures, label_embedding
from moto.keypoints.proposal import KeypointProposal, propose_keypoints
from moto.keypoints.script import SelectorScript, SubtaskScript
from moto.keypoints.selection import ScriptedSelector, Selector, select_keypoints
from moto.keypoints.voting import ARM, TARGET, Keypoint3D, backproject, vote_counts, vote_target_keypoint

__all__ = [
    "ARM",
    "FEATURE_DIM",
    "Keypoint3D",
    "KeypointProposal",
    "ScriptedSelector",
    "SelectorScript",
    "Selector",
    "SubtaskScript",
    "SyntheticFeatures",
    "TARGET",
    "ak_position",
    "arm_keypoint",
    "backproject",
    "choose_arm",
    "contact_offset",
    "label_embedding",
    "propose_keypoints",
    "select_keypoints",
    "vote_counts",
    "vote_target_keypoint",
]
