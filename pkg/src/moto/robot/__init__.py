"""Kinematic model of the mobile manipulator."""
from moto.robot.kinematics import (
    arm_frames,
    arm_radius,
    end_effector,
    forward_kinematics,
    inverse_kinematics,
    surface_query_points,
)
from moto.robot.spec import (
    CAPSULE_RADIUS,
    ArmSpec,
    RobotSpec,
    default_dual_arm,
    default_single_arm,
    preset,
)
from moto.robot.state import RobotState, check_limits, home_state, move_base

__all__ = [
    "ArmSpec",
    "CAPSULE_RADIUS",
    "RobotSpec",
    "RobotState",
    "arm_frames",
    "arm_radius",
    "check_limits",
    "default_dual_arm",
    "default_single_arm",
    "end_effector",
    "forward_kinematics",
    "home_state",
    "inverse_kinematics",
    "move_base",
    "preset",
    "surface_query_points",
]
