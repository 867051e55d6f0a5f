"""Per-step dual annealing, coarse navigation and trajectory assembly."""
from moto.optimizer.anneal import (
    AnnealResult,
    StepBox,
    StepResult,
    anneal_step,
    cauchy_visit,
    dual_anneal,
    propose_candidates,
)
from moto.optimizer.navigation import OccupancyGrid, astar, occupancy_grid, waypoints
from moto.optimizer.trajectory import (
    CONTACT,
    INFEASIBLE,
    STALLED,
    TIMEOUT,
    Trajectory,
    action_between,
    apply_action,
    navigate,
    optimize_trajectory,
    reached,
)

__all__ = [
    "AnnealResult",
    "CONTACT",
    "INFEASIBLE",
    "OccupancyGrid",
    "STALLED",
    "StepBox",
    "StepResult",
    "TIMEOUT",
    "Trajectory",
    "action_between",
    "anneal_step",
    "apply_action",
    "astar",
    "cauchy_visit",
    "dual_anneal",
    "navigate",
    "occupancy_grid",
    "optimize_trajectory",
    "propose_candidates",
    "reached",
    "waypoints",
]
