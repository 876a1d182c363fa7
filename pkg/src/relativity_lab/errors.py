"""Exception hierarchy for relativity_lab."""
from __future__ import annotations


class RelativityLabError(ValueError):
    """Base class for every error raised by the package."""


class VelocityDomainError(RelativityLabError):
    """Raised when a velocity ratio is not strictly inside (-1, 1)."""


class BoostParameterError(RelativityLabError):
    """Raised when a boost scale factor is not strictly positive and finite."""


class EventCoordinateError(RelativityLabError):
    """Raised when an event carries a non-finite coordinate."""


class NoIntersectionError(RelativityLabError):
    """Raised when a light ray never meets the target worldline."""


class OrderingError(RelativityLabError):
    """Raised when clock readings are not in emission < reflection < return order."""


class ClosedFormMismatchError(RelativityLabError):
    """Raised when a simulated quantity disagrees with its closed-form value."""


class ConstraintInconsistencyError(RelativityLabError):
    """Raised when the scale-function constraint system has no unique solution."""


class ConventionError(RelativityLabError):
    """Raised when a convention is asked for a time basis it does not define."""


class ConfigError(RelativityLabError):
    """Raised for invalid scenario configuration or grid files."""


__all__ = [
    "BoostParameterError",
    "ClosedFormMismatchError",
    "ConfigError",
    "ConstraintInconsistencyError",
    "ConventionError",
    "EventCoordinateError",
    "NoIntersectionError",
    "OrderingError",
    "RelativityLabError",
    "VelocityDomainError",
]
