"""Exception types shared across the toolkit."""


class RadarVitalsError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(RadarVitalsError):
    """Radar configuration violates a structural invariant."""


class SceneError(RadarVitalsError):
    """Scene construction failed (bin collision, distance out of range, ...)."""


class FilterError(RadarVitalsError):
    """Spectral filter mask is empty for the requested bands."""


class DivergenceError(RadarVitalsError):
    """Solver iterates became non-finite (step size too large)."""


class EmptySupportError(RadarVitalsError):
    """Support extraction found no occupied range bins."""


class SessionError(RadarVitalsError):
    """Monitoring session could not be run to completion."""


class ScenarioError(RadarVitalsError):
    """Scenario file is malformed or fails validation."""
