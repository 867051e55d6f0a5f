"""Task orchestration over the keypoint and optimiser modules."""
from moto.planner.feasibility import FeasibilityReport, grid_docking_search
from moto.planner.metrics import aggregate, evaluate_run
from moto.planner.plan import (
    HandoffRecord,
    PlanResult,
    VoteResult,
    generate_target_keypoint,
    plan_subtask,
    plan_task,
)
from moto.planner.prompt import describe_scene
from moto.planner.task import Subtask, TaskScript

__all__ = [
    "FeasibilityReport",
    "HandoffRecord",
    "PlanResult",
    "Subtask",
    "TaskScript",
    "VoteResult",
    "aggregate",
    "describe_scene",
    "evaluate_run",
    "generate_target_keypoint",
    "grid_docking_search",
    "plan_subtask",
    "plan_task",
]
