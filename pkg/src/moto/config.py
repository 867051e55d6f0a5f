"""Resolved run configuration and dotted-path overrides."""
from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field

import yaml

from moto.errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class CostWeights:
    """Weights of the per-step objective plus collision/contact tolerances.

    ``w_smooth`` defaults below 1: with unit weights a straight base move
    lowers the keypoint distance by exactly what it adds in smoothness, so
    a per-step search never has a reason to move. ``unit()`` gives the
    plain unweighted sum.
    """

    w_dist: float = 1.0
    w_collision: float = 1.0
    w_smooth: float = 0.3
    w_margin: float = 1.0
    eps0: float = 0.05
    contact_tol: float = 0.05
    n_query: int = 64

    def __post_init__(self):
        for name in ("w_dist", "w_collision", "w_smooth", "w_margin"):
            if not getattr(self, name) >= 0:
                raise DomainError(f"weights.{name} must be >= 0")
        if not self.eps0 > 0:
            raise DomainError("weights.eps0 must be > 0")
        if not self.contact_tol > 0:
            raise DomainError("weights.contact_tol must be > 0")
        if self.n_query < 3:
            raise DomainError("weights.n_query must be >= 3")

    @classmethod
    def unit(cls, **kw) -> "CostWeights":
        return cls(w_dist=1.0, w_collision=1.0, w_smooth=1.0, w_margin=1.0, **kw)


@dataclass(frozen=True)
class AnnealConfig:
    K: int = 32
    T0: float = 1.0
    cooling: float = 0.97
    visit_scale_m: float = 0.1
    visit_scale_rad: float = 0.15
    max_iters: int = 500
    eps_stop: float = 1e-4
    seed: int = 0
    restart_budget: int = 3
    stop_window: int = 50
    polish_every: int = 25
    reanneal_ratio: float = 1e-4
    collision_cap: float = 0.0
    base_step_cap: float = 0.25
    joint_step_cap: float = 0.3

    def __post_init__(self):
        if self.K < 1:
            raise DomainError("anneal.K must be >= 1")
        if not (0 < self.cooling < 1):
            raise DomainError("anneal.cooling must be in (0, 1)")
        if self.max_iters < 1:
            raise DomainError("anneal.max_iters must be >= 1")
        if not self.eps_stop > 0:
            raise DomainError("anneal.eps_stop must be > 0")
        if not self.T0 > 0:
            raise DomainError("anneal.T0 must be > 0")
        if self.restart_budget < 0 or self.stop_window < 1 or self.polish_every < 0:
            raise DomainError("anneal.restart_budget/stop_window/polish_every out of range")
        if not (0 <= self.seed < 2**64):
            raise DomainError("anneal.seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class KeypointConfig:
    V: int = 3
    k_per_mask: int = 3
    tau: float = 0.05
    restrict_to_target: bool = False
    kmeans_seed: int = 0

    def __post_init__(self):
        if self.V < 1 or self.k_per_mask < 1:
            raise DomainError("keypoints.V and keypoints.k_per_mask must be >= 1")
        if not self.tau > 0:
            raise DomainError("keypoints.tau must be > 0")


@dataclass(frozen=True)
class PlannerConfig:
    T_max: int = 30
    nav_trigger: float = 1.5
    nav_goal_radius: float = 0.6
    grid_cell: float = 0.1
    home_first: bool = False

    def __post_init__(self):
        if self.T_max < 1:
            raise DomainError("planner.T_max must be >= 1")
        if not (self.grid_cell > 0 and self.nav_goal_radius > 0):
            raise DomainError("planner.grid_cell and planner.nav_goal_radius must be > 0")


@dataclass(frozen=True)
class RunConfig:
    weights: CostWeights = field(default_factory=CostWeights)
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    keypoints: KeypointConfig = field(default_factory=KeypointConfig)
    planner: PlannerConfig = field(default_factory=PlannerConfig)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @classmethod
    def resolve(cls, scenario_config: dict | None = None, overrides=(), seed: int | None = None) -> "RunConfig":
        """Defaults, then the scenario's config block, then ``key=value`` overrides."""
        values = cls().to_dict()
        for section, block in (scenario_config or {}).items():
            if not isinstance(block, dict):
                raise ConfigurationError(f"config.{section} must be a mapping")
            for key, val in block.items():
                _assign(values, f"{section}.{key}", val)
        for item in overrides:
            key, sep, raw = item.partition("=")
            if not sep:
                raise ConfigurationError(f"override {item!r} is not key=value")
            _assign(values, key.strip(), yaml.safe_load(raw))
        if seed is not None:
            values["anneal"]["seed"] = int(seed)
        try:
            return cls(
                weights=CostWeights(**values["weights"]),
                anneal=AnnealConfig(**values["anneal"]),
                keypoints=KeypointConfig(**values["keypoints"]),
                planner=PlannerConfig(**values["planner"]),
            )
        except DomainError as e:
            raise ConfigurationError(str(e)) from None


_TYPES = {
    section.name: {f.name: f.type for f in dataclasses.fields(section.default_factory)}
    for section in dataclasses.fields(RunConfig)
}


def _assign(values: dict, dotted: str, val) -> None:
    section, _, key = dotted.partition(".")
    if section not in values or key not in values[section]:
        raise ConfigurationError(f"unknown config key {dotted!r}")
    kind = _TYPES[section][key]
    try:
        if kind == "int":
            if isinstance(val, float) and not val.is_integer():
                raise ValueError
            val = int(val)
        elif kind == "float":
            val = float(val)
        elif kind == "bool":
            if not isinstance(val, bool):
                raise ValueError
    except (TypeError, ValueError):
        raise ConfigurationError(f"config key {dotted!r} expects {kind}, got {val!r}") from None
    values[section][key] = val
