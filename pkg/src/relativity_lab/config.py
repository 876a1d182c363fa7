"""Configuration objects for relativity_lab scenario runs."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from .errors import ConfigError, RelativityLabError
from .lorentz import Velocity, as_velocity
from .synchronization import SyncConvention, TimeBasis

CONVENTION_CHOICES = ("einstein", "poincare", "both")
BASIS_CHOICES = ("true", "local", "both")

ENV_SEED = "RELATIVITY_LAB_SEED"
ENV_TOLERANCE = "RELATIVITY_LAB_TOLERANCE"
ENV_C = "RELATIVITY_LAB_C"

DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters shared by every subcommand.

    Lengths are in units of ``L0 = 1``; ``c`` only rescales reported times.
    """

    length: float = 1.0
    eps: Velocity = field(default_factory=lambda: Velocity(0.0))
    convention: str = "both"
    basis: str = "both"
    c: float = 1.0
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "eps", as_velocity(self.eps))
        except RelativityLabError as exc:
            raise ConfigError(str(exc)) from exc
        for name in ("length", "c", "tolerance"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be a positive finite number, received {getattr(self, name)!r}.")
            object.__setattr__(self, name, value)
        if self.convention not in CONVENTION_CHOICES:
            raise ConfigError(f"convention must be one of {CONVENTION_CHOICES}, received {self.convention!r}.")
        if self.basis not in BASIS_CHOICES:
            raise ConfigError(f"basis must be one of {BASIS_CHOICES}, received {self.basis!r}.")
        seed = int(self.seed)
        if seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, received {self.seed!r}.")
        object.__setattr__(self, "seed", seed)

    def conventions(self) -> tuple[SyncConvention, ...]:
        if self.convention == "both":
            return (SyncConvention.EINSTEIN, SyncConvention.POINCARE_ETHER)
        return (SyncConvention(self.convention),)

    def bases(self) -> tuple[TimeBasis, ...]:
        if self.basis == "both":
            return (TimeBasis.TRUE_TIME, TimeBasis.LOCAL_TIME)
        return (TimeBasis(self.basis),)

    def to_report_time(self, t: float) -> float:
        """Convert a natural-unit time to report units ``t*L0/c``."""

        return t / self.c

    def as_dict(self) -> Dict[str, Any]:
        return {
            "length": self.length,
            "eps": self.eps.epsilon,
            "convention": self.convention,
            "basis": self.basis,
            "c": self.c,
            "seed": self.seed,
            "tolerance": self.tolerance,
        }


@dataclass
class ConfigSource:
    """Describe which settings were taken from the environment."""

    seed_env: Optional[str] = None
    tolerance_env: Optional[str] = None
    c_env: Optional[str] = None


def _from_env(environ: Mapping[str, str], name: str, cast):
    raw = environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"Environment variable {name}={raw!r} is not a valid {cast.__name__}.") from exc


def load_scenario_config(
    *,
    length: Optional[float] = None,
    eps: Optional[float] = None,
    convention: Optional[str] = None,
    basis: Optional[str] = None,
    c: Optional[float] = None,
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> tuple[ScenarioConfig, ConfigSource]:
    """Resolve a config from explicit values, then environment variables, then defaults."""

    environ = os.environ if environ is None else environ
    source = ConfigSource()
    defaults = ScenarioConfig()

    if seed is None:
        seed = _from_env(environ, ENV_SEED, int)
        source.seed_env = ENV_SEED if seed is not None else None
    if tolerance is None:
        tolerance = _from_env(environ, ENV_TOLERANCE, float)
        source.tolerance_env = ENV_TOLERANCE if tolerance is not None else None
    if c is None:
        c = _from_env(environ, ENV_C, float)
        source.c_env = ENV_C if c is not None else None

    config = ScenarioConfig(
        length=defaults.length if length is None else length,
        eps=defaults.eps if eps is None else eps,
        convention=defaults.convention if convention is None else convention,
        basis=defaults.basis if basis is None else basis,
        c=defaults.c if c is None else c,
        seed=defaults.seed if seed is None else seed,
        tolerance=defaults.tolerance if tolerance is None else tolerance,
    )
    return config, source


__all__ = [
    "BASIS_CHOICES",
    "CONVENTION_CHOICES",
    "ConfigSource",
    "DEFAULT_TOLERANCE",
    "ENV_C",
    "ENV_SEED",
    "ENV_TOLERANCE",
    "ScenarioConfig",
    "load_scenario_config",
]
