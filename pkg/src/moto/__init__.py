"""Interaction-aware navigation for mobile manipulation.

Multi-view keypoint voting finds where the robot must touch; a
dual-annealing search over base pose and arm joints drives the arm
keypoint onto it under collision, smoothness and arm-margin costs, and
stops at a docking pose for a fixed-base manipulation policy.
"""
from moto.kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
