"""Two-parameter Lorentz transformations along the x axis.

All quantities are in natural units (c = 1). A boost is the pair ``(epsilon, scale)``::

    t' = k*l*(t - eps*x)    x' = k*l*(x - eps*t)    y' = l*y    z' = l*z

with ``k = 1/sqrt(1 - eps**2)``. The physical subgroup fixes ``scale = 1``; the same slot
also carries Einstein's ``phi`` factor, which plays the identical role.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    BoostParameterError,
    ConstraintInconsistencyError,
    EventCoordinateError,
    RelativityLabError,
    VelocityDomainError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Velocity:
    """Dimensionless velocity ratio ``v/c`` strictly inside (-1, 1)."""

    epsilon: float

    def __post_init__(self) -> None:
        value = float(self.epsilon)
        if not math.isfinite(value) or abs(value) >= 1.0:
            raise VelocityDomainError(f"Velocity ratio must satisfy |eps| < 1, received {self.epsilon!r}.")
        object.__setattr__(self, "epsilon", value)

    def __float__(self) -> float:
        return self.epsilon

    def __neg__(self) -> "Velocity":
        return Velocity(-self.epsilon)


VelocityLike = Union[Velocity, float, int]


def as_velocity(value: VelocityLike) -> Velocity:
    """Coerce a bare number into a validated :class:`Velocity`."""

    if isinstance(value, Velocity):
        return value
    return Velocity(value)


@dataclass(frozen=True)
class Event:
    """Spacetime point expressed in the coordinates of ``frame_tag``."""

    t: float
    x: float
    y: float = 0.0
    z: float = 0.0
    frame_tag: str = "K"

    def __post_init__(self) -> None:
        for name in ("t", "x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise EventCoordinateError(f"Event coordinate {name} must be finite, received {value!r}.")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t, self.x, self.y, self.z)

    def as_dict(self) -> dict[str, float | str]:
        return {"t": self.t, "x": self.x, "y": self.y, "z": self.z, "frame": self.frame_tag}


@dataclass(frozen=True)
class Boost:
    """Member of the ``(epsilon, scale)`` transformation family."""

    epsilon: Velocity
    scale: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_velocity(self.epsilon))
        scale = float(self.scale)
        if not math.isfinite(scale) or scale <= 0.0:
            raise BoostParameterError(f"Boost scale must be a positive finite number, received {self.scale!r}.")
        object.__setattr__(self, "scale", scale)

    @property
    def gamma(self) -> float:
        return gamma(self.epsilon)

    def as_dict(self) -> dict[str, float]:
        return {"epsilon": self.epsilon.epsilon, "scale": self.scale}


def gamma(eps: VelocityLike) -> float:
    """Return the Lorentz factor ``1/sqrt(1 - eps**2)``."""

    e = as_velocity(eps).epsilon
    # (1 - e)(1 + e) keeps precision as |e| approaches 1.
    return 1.0 / math.sqrt((1.0 - e) * (1.0 + e))


def rapidity(eps: VelocityLike) -> float:
    """Return ``artanh(eps)``; rapidities add under composition."""

    return math.atanh(as_velocity(eps).epsilon)


def identity_boost() -> Boost:
    return Boost(Velocity(0.0), 1.0)


def boost_apply(b: Boost, e: Event) -> Event:
    """Transform ``e`` by ``b``; the result is tagged with a primed frame name."""

    eps = b.epsilon.epsilon
    kl = b.gamma * b.scale
    return Event(
        t=kl * (e.t - eps * e.x),
        x=kl * (e.x - eps * e.t),
        y=b.scale * e.y,
        z=b.scale * e.z,
        frame_tag=f"{e.frame_tag}'",
    )


def compose_velocities(e1: VelocityLike, e2: VelocityLike) -> Velocity:
    """Relativistic velocity addition ``(e1 + e2)/(1 + e1*e2)``."""

    a = as_velocity(e1).epsilon
    b = as_velocity(e2).epsilon
    return Velocity((a + b) / (1.0 + a * b))


def boost_compose(b1: Boost, b2: Boost) -> Boost:
    """Return the boost equivalent to applying ``b1`` first and then ``b2``."""

    return Boost(compose_velocities(b1.epsilon, b2.epsilon), b1.scale * b2.scale)


def boost_inverse(b: Boost) -> Boost:
    return Boost(-b.epsilon, 1.0 / b.scale)


def boost_matrix(b: Boost) -> np.ndarray:
    """Return the 2x2 matrix acting on column vectors ``(t, x)``.

    Composition matches the matrix product: ``boost_matrix(boost_compose(b1, b2))``
    equals ``boost_matrix(b2) @ boost_matrix(b1)``.
    """

    eps = b.epsilon.epsilon
    kl = b.gamma * b.scale
    return np.array([[kl, -kl * eps], [-kl * eps, kl]], dtype=float)


def interval(e: Event) -> float:
    """Return ``t**2 - (x**2 + y**2 + z**2)``."""

    return e.t * e.t - (e.x * e.x + e.y * e.y + e.z * e.z)


@dataclass(frozen=True)
class ScaleFunctionVerdict:
    """Outcome of solving the constraint system for ``l(eps)``."""

    sample_count: int
    node_count: int
    closure_constraints: int
    rank: int
    residual: float
    max_deviation: float

    @property
    def unique(self) -> bool:
        return self.rank == self.node_count

    def as_dict(self) -> dict[str, float | int | bool]:
        return {
            "sample_count": self.sample_count,
            "node_count": self.node_count,
            "closure_constraints": self.closure_constraints,
            "rank": self.rank,
            "residual": self.residual,
            "max_deviation": self.max_deviation,
            "unique": self.unique,
        }


CLOSURE_NODE_LIMIT = 1024
CLOSURE_BLOCK = 256

# reciprocity row (1, 1) and isotropy row (1, -1) on (u(eps), u(-eps))
_MIRROR_PAIR_SYSTEM = np.array([[1.0, 1.0], [1.0, -1.0]])


def _closure_rows(nodes: np.ndarray, mirrors: np.ndarray, tolerance: float) -> np.ndarray:
    """Find node triples ``(i, j, m)`` with ``compose(nodes[i], nodes[j]) == nodes[m]``.

    Pairs are drawn from an evenly strided subset of about ``CLOSURE_NODE_LIMIT``
    nodes, closed under negation and always holding zero. Composed velocities are
    looked up in the full sorted node set, one block of rows at a time.
    """

    n = len(nodes)
    stride = np.rint(np.linspace(0, n - 1, min(n, CLOSURE_NODE_LIMIT))).astype(np.intp)
    zero = np.searchsorted(nodes, 0.0)
    pick = np.unique(np.concatenate([stride, mirrors[stride], [zero]]))
    right = nodes[pick]

    found: list[np.ndarray] = []
    for start in range(0, len(pick), CLOSURE_BLOCK):
        rows = pick[start : start + CLOSURE_BLOCK]
        left = nodes[rows][:, None]
        composed = (left + right[None, :]) / (1.0 + left * right[None, :])
        upper = np.clip(np.searchsorted(nodes, composed), 0, n - 1)
        lower = np.clip(upper - 1, 0, n - 1)
        nearest = np.where(np.abs(nodes[lower] - composed) < np.abs(nodes[upper] - composed), lower, upper)
        i, j = np.nonzero(np.abs(nodes[nearest] - composed) <= tolerance)
        found.append(np.column_stack([rows[i], pick[j], nearest[i, j]]))
    return np.concatenate(found) if found else np.empty((0, 3), dtype=np.intp)


def solve_scale_function(samples: Sequence[VelocityLike] | Iterable[VelocityLike], *, tolerance: float = 1e-12) -> ScaleFunctionVerdict:
    """Solve closure, reciprocity and isotropy for ``l`` on the sampled velocities.

    The unknowns are ``u(eps) = ln l(eps)`` on the samples, their negatives and zero.
    Reciprocity gives ``u(eps) + u(-eps) = 0`` and isotropy ``u(eps) - u(-eps) = 0``;
    both only couple a mirror pair, so each pair is a 2x2 block solved on its own.
    Closure ``u(eps'') = u(eps) + u(eps')`` must then hold on the solution wherever
    the composed velocity is itself a node. A full-rank system pins ``l = 1``.
    """

    values = [as_velocity(sample).epsilon for sample in samples]
    if not values:
        raise RelativityLabError("solve_scale_function needs at least one velocity sample.")

    nodes = np.array(sorted({0.0, *values, *(-v for v in values)}), dtype=float)
    n = len(nodes)
    mirrors = np.searchsorted(nodes, -nodes)
    positive = np.flatnonzero(nodes > 0.0)
    zero = int(np.searchsorted(nodes, 0.0))

    log_scale = np.zeros(n)
    if positive.size:
        blocks = np.broadcast_to(_MIRROR_PAIR_SYSTEM, (positive.size, 2, 2))
        solved = np.linalg.solve(blocks, np.zeros((positive.size, 2, 1)))[..., 0]
        log_scale[positive] = solved[:, 0]
        log_scale[mirrors[positive]] = solved[:, 1]
    # at eps = 0 reciprocity reads 2*u(0) = 0 and isotropy is empty
    log_scale[zero] = 0.0
    rank = int(np.linalg.matrix_rank(_MIRROR_PAIR_SYSTEM)) * positive.size + 1

    closure = _closure_rows(nodes, mirrors, tolerance)
    residuals = [
        np.abs(log_scale + log_scale[mirrors]),
        np.abs(log_scale - log_scale[mirrors]),
        np.abs(log_scale[closure[:, 2]] - log_scale[closure[:, 0]] - log_scale[closure[:, 1]]),
    ]
    residual = float(max(np.max(part, initial=0.0) for part in residuals))

    if rank < n:
        raise ConstraintInconsistencyError(f"Scale-function constraints leave {n - rank} degree(s) of freedom.")
    if residual > tolerance:
        raise ConstraintInconsistencyError(f"Scale-function constraints are inconsistent (residual {residual!r}).")

    scale = np.exp(log_scale)
    # l(eps)*l(-eps) = 1 and l(eps) = l(-eps) give l**2 = 1; with l > 0 that is l = 1.
    squared = scale * scale[mirrors]
    if np.any(scale <= 0.0) or np.max(np.abs(squared - 1.0)) > tolerance:
        raise ConstraintInconsistencyError("Solved scale function violates l(eps)*l(-eps) = 1.")

    verdict = ScaleFunctionVerdict(
        sample_count=len(values),
        node_count=n,
        closure_constraints=len(closure),
        rank=rank,
        residual=residual,
        max_deviation=float(np.max(np.abs(scale - 1.0))),
    )
    logger.debug("Scale function solved on %d nodes: %s", n, verdict)
    return verdict


__all__ = [
    "Boost",
    "Event",
    "ScaleFunctionVerdict",
    "Velocity",
    "VelocityLike",
    "as_velocity",
    "boost_apply",
    "boost_compose",
    "boost_inverse",
    "boost_matrix",
    "compose_velocities",
    "gamma",
    "identity_boost",
    "interval",
    "rapidity",
    "solve_scale_function",
]
