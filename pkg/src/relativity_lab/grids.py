"""Loading (length, eps) scenario grids from YAML files."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import yaml

from .errors import ConfigError, RelativityLabError
from .lorentz import Velocity, as_velocity


@dataclass(frozen=True)
class GridPoint:
    """One scenario: rod rest length and velocity relative to the stationary frame."""

    length: float
    eps: Velocity

    def as_dict(self) -> dict[str, float]:
        return {"length": self.length, "eps": self.eps.epsilon}

    @classmethod
    def from_mapping(cls, position: int, payload: Mapping[str, object]) -> "GridPoint":
        """Validate and coerce a YAML mapping into a ``GridPoint``."""

        missing = {"length", "eps"} - payload.keys()
        if missing:
            missing_fields = ", ".join(sorted(missing))
            raise ConfigError(f"Missing required field(s) for grid point {position}: {missing_fields}")

        try:
            length = float(payload["length"])
            raw_eps = float(payload["eps"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Grid point {position} has non-numeric values: {dict(payload)!r}") from exc
        try:
            eps = as_velocity(raw_eps)
        except RelativityLabError as exc:
            raise ConfigError(f"Grid point {position}: {exc}") from exc
        if length <= 0.0:
            raise ConfigError(f"Grid point {position}: length must be positive, received {length!r}.")
        return cls(length=length, eps=eps)


def load_grid(path: str | Path) -> list[GridPoint]:
    """Load grid points from a YAML file with a top-level ``points`` list."""

    path_obj = Path(path)
    if not path_obj.exists():
        raise FileNotFoundError(f"Grid file not found: {path_obj}")

    data = yaml.safe_load(path_obj.read_text(encoding="utf-8")) or {}
    if not isinstance(data, Mapping) or not isinstance(data.get("points"), list):
        raise ConfigError("Grid file must be a mapping with a 'points' list.")

    points: list[GridPoint] = []
    for position, payload in enumerate(data["points"]):
        if not isinstance(payload, Mapping):
            raise ConfigError(f"Expected mapping for grid point {position}, received {type(payload)!r}.")
        points.append(GridPoint.from_mapping(position, payload))

    if not points:
        raise ConfigError(f"Grid file {path_obj} contains no points.")
    return points


__all__ = ["GridPoint", "load_grid"]
