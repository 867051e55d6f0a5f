"""Exception types raised across the package."""


class MotoError(Exception):
    """Base class for all package errors."""


class ScenarioParseError(MotoError, ValueError):
    """Scenario document does not match the schema."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class IntegrityError(MotoError, ValueError):
    """Scenario parses but references something that does not exist."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DomainError(MotoError, ValueError):
    """Input outside an operation's domain."""


class ConfigurationError(MotoError, KeyError):
    """Missing or inconsistent configuration (scripts, overrides)."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NoDepthError(MotoError, ValueError):
    """Backprojection requested for a background pixel."""


class NoConsensusError(MotoError):
    """No scene point received a vote."""


class UnreachableTargetError(MotoError):
    """IK failed to bring the end effector within tolerance."""

    def __init__(self, residual: float, joints, iterations: int):
        self.residual = residual
        self.joints = joints
        self.iterations = iterations
        super().__init__(f"IK did not converge: residual {residual:.3g} m after {iterations} iterations")


class StepInfeasibleError(MotoError):
    """No collision-feasible state was found for an optimization step."""
