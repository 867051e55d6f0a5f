"""World model: labeled point cloud, scene graph, camera views, scenario I/O."""
from moto.scene.camera import RENDER_EPS, CameraView, render_depth
from moto.scene.cloud import ScenePointCloud
from moto.scene.graph import ObjectNode, SceneGraph
from moto.scene.scenario import Scenario, load_scenario, save_scenario, scenario_from_dict, scenario_to_dict

__all__ = [
    "RENDER_EPS",
    "CameraView",
    "ObjectNode",
    "Scenario",
    "SceneGraph",
    "ScenePointCloud",
    "load_scenario",
    "render_depth",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
]
