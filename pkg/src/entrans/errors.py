"""Exception hierarchy shared across the engine.

Every domain failure raises an EntransError subclass with a human-readable
message that names the offending row, column, month, or parameter. The CLI
maps these to exit code 1; the HTTP service maps them to 4xx responses.
"""


class EntransError(Exception):
    """Base class for all engine errors."""


class PanelLoadError(EntransError):
    """Malformed panel, schema, or override file."""


class PanelValueError(EntransError):
    """Structurally valid panel violating a domain invariant."""


class SplitError(EntransError):
    """Degenerate train/holdout partition."""


class ProjectionError(EntransError):
    """Determinant forward-projection rule cannot be applied."""


class NetworkError(EntransError):
    """Invalid network configuration or shape mismatch."""


class ModelFileError(EntransError):
    """Corrupt or incompatible persisted model."""


class ScorecardError(EntransError):
    """Scorecard violating the evaluation-matrix invariants."""


class DiffusionError(EntransError):
    """Infeasible diffusion anchor, target, or bounds."""


class ScenarioError(EntransError):
    """Scenario spec cannot be composed as stated."""
