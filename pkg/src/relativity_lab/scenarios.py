"""Two-pipeline experiments: rod lengths, clock rates and observational equivalence.

The Einstein pipeline knows only inertial frames, their clocks and the Lorentz
transformation. The Poincaré pipeline declares one frame the ether rest frame, contracts
moving rods for real, and has co-moving observers read local time. Ether-frame
bookkeeping lives in :class:`EtherAudit` and never enters :class:`ObservableSet`.
"""
from __future__ import annotations

import logging
import math
from dataclasses import astuple, dataclass, fields
from typing import Optional

from .errors import RelativityLabError
from .ether import ETHER_FRAME, RodConfiguration, Worldline, round_trip_true
from .lorentz import Boost, Event, Velocity, VelocityLike, as_velocity, boost_apply, boost_inverse
from .synchronization import (
    SyncConvention,
    TimeBasis,
    kappa_true,
    local_time,
    reflection_offset,
    round_trip_report,
)

logger = logging.getLogger(__name__)

STATIONARY_FRAME = ETHER_FRAME
MOVING_FRAME = "K'"
_FRAMES = (STATIONARY_FRAME, MOVING_FRAME)


@dataclass(frozen=True)
class RodMeasurement:
    """Rod length seen in its own frame and from the other frame."""

    rest_length: float
    eps: Velocity
    convention: SyncConvention
    measured_in_home_frame: float
    measured_from_other_frame: float
    rod_frame: str = MOVING_FRAME
    # Poincaré bookkeeping only; not an observable.
    ether_length: Optional[float] = None

    def as_dict(self) -> dict[str, float | str | None]:
        return {
            "rest_length": self.rest_length,
            "eps": self.eps.epsilon,
            "convention": self.convention.value,
            "rod_frame": self.rod_frame,
            "measured_in_home_frame": self.measured_in_home_frame,
            "measured_from_other_frame": self.measured_from_other_frame,
            "ether_length": self.ether_length,
        }


@dataclass(frozen=True)
class ObservableSet:
    """Outputs of measurement procedures only."""

    forth_local: float
    back_local: float
    rod_cross_measurement: float
    clock_rate_ratio: float

    def as_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


@dataclass(frozen=True)
class EtherAudit:
    """Ether-frame quantities that no co-moving observer can measure."""

    real_rod_length: float
    forth_true: float
    back_true: float
    kappa_true: float
    reflection_offset: float

    def as_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


@dataclass(frozen=True)
class EquivalenceAudit:
    length: float
    eps: Velocity
    einstein: ObservableSet
    poincare: ObservableSet
    ether: EtherAudit

    def max_discrepancy(self) -> float:
        """Largest field-wise relative difference between the two observable sets."""

        worst = 0.0
        for a, b in zip(astuple(self.einstein), astuple(self.poincare)):
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
        return worst

    def as_dict(self) -> dict[str, object]:
        return {
            "length": self.length,
            "eps": self.eps.epsilon,
            "einstein": self.einstein.as_dict(),
            "poincare": self.poincare.as_dict(),
            "ether": self.ether.as_dict(),
            "max_discrepancy": self.max_discrepancy(),
        }


def _other_frame(frame: str) -> str:
    if frame not in _FRAMES:
        raise RelativityLabError(f"Unknown frame {frame!r}; expected one of {_FRAMES}.")
    return _FRAMES[1 - _FRAMES.index(frame)]


def _mark_simultaneously(first: Worldline, second: Worldline, t: float = 0.0) -> float:
    return second.position(t) - first.position(t)


def _einstein_rod(L: float, v: Velocity, home: str) -> tuple[float, float]:
    """Rod at rest in ``home``; the measuring frame sees ``home`` moving at ``v``."""

    observer = _other_frame(home)
    endpoints = [(Event(0.0, x, frame_tag=home), Event(1.0, x, frame_tag=home)) for x in (0.0, L)]
    in_home = _mark_simultaneously(*(Worldline.through(*pair) for pair in endpoints))

    to_observer = boost_inverse(Boost(v))
    worldlines = []
    for pair in endpoints:
        mapped = [boost_apply(to_observer, e) for e in pair]
        # boost_apply primes the frame tag; re-label with the observer frame.
        mapped = [Event(e.t, e.x, e.y, e.z, frame_tag=observer) for e in mapped]
        worldlines.append(Worldline.through(*mapped))
    from_observer = _mark_simultaneously(*worldlines)
    return in_home, from_observer


def _poincare_rod(L: float, v: Velocity, home: str, t: float = 0.0) -> tuple[float, float, float]:
    """Ether at rest in the frame other than ``home``; the rod moves through it at ``v``."""

    ether_frame = _other_frame(home)
    rod = RodConfiguration(L, v)
    station_a, station_b = rod.stations()
    ether_length = _mark_simultaneously(station_a.worldline, station_b.worldline, t)

    # First LT at a fixed true time replaces the moving contracted rod by a motionless one.
    to_home = Boost(v)
    a_home = boost_apply(to_home, station_a.worldline.event_at(t, ether_frame))
    b_home = boost_apply(to_home, station_b.worldline.event_at(t, ether_frame))
    in_home = b_home.x - a_home.x

    # Observers at rest in the ether read true time directly.
    from_ether = ether_length
    return in_home, from_ether, ether_length


def measure_rod(
    L: float,
    eps: VelocityLike,
    convention: SyncConvention | str,
    *,
    rod_frame: str = MOVING_FRAME,
) -> RodMeasurement:
    """Measure a rod of rest length ``L`` in its own frame and from the other frame.

    K' moves at ``+eps`` relative to K. A rod at rest in K is handled by re-running the
    same pipeline with K' playing the stationary (or ether) role, so K moves at ``-eps``.
    """

    v = as_velocity(eps)
    convention = SyncConvention(convention)
    if L <= 0.0 or not math.isfinite(L):
        raise RelativityLabError(f"Rod rest length must be positive, received {L!r}.")
    _other_frame(rod_frame)
    relative = v if rod_frame == MOVING_FRAME else -v

    ether_length: Optional[float] = None
    if convention is SyncConvention.EINSTEIN:
        in_home, from_other = _einstein_rod(L, relative, rod_frame)
    else:
        in_home, from_other, ether_length = _poincare_rod(L, relative, rod_frame)

    measurement = RodMeasurement(
        rest_length=L,
        eps=v,
        convention=convention,
        measured_in_home_frame=in_home,
        measured_from_other_frame=from_other,
        rod_frame=rod_frame,
        ether_length=ether_length,
    )
    logger.debug("Rod measurement: %s", measurement)
    return measurement


def clock_rate_ratio(eps: VelocityLike, convention: SyncConvention | str = SyncConvention.POINCARE_ETHER) -> float:
    """Moving-clock reading elapsed per unit of stationary-frame time."""

    v = as_velocity(eps)
    convention = SyncConvention(convention)
    if convention is SyncConvention.EINSTEIN:
        # One proper tick of a clock at rest at the origin of K', seen from K.
        to_stationary = boost_inverse(Boost(v))
        start = boost_apply(to_stationary, Event(0.0, 0.0, frame_tag=MOVING_FRAME))
        tick = boost_apply(to_stationary, Event(1.0, 0.0, frame_tag=MOVING_FRAME))
        return 1.0 / (tick.t - start.t)

    # Local time along the comoving worldline x = eps*t.
    worldline = Worldline(0.0, v)
    start, later = worldline.event_at(0.0), worldline.event_at(1.0)
    return (local_time(later, v) - local_time(start, v)) / (later.t - start.t)


def observables(L: float, eps: VelocityLike, convention: SyncConvention | str) -> ObservableSet:
    """Run the round-trip, rod and clock procedures of one convention."""

    convention = SyncConvention(convention)
    sync = round_trip_report(L, eps, TimeBasis.LOCAL_TIME, convention)
    rod = measure_rod(L, eps, convention)
    return ObservableSet(
        forth_local=sync.forth,
        back_local=sync.back,
        rod_cross_measurement=rod.measured_from_other_frame,
        clock_rate_ratio=clock_rate_ratio(eps, convention),
    )


def ether_audit(L: float, eps: VelocityLike) -> EtherAudit:
    v = as_velocity(eps)
    record = round_trip_true(L, v)
    return EtherAudit(
        real_rod_length=record.rod.contracted_length,
        forth_true=record.forth_true,
        back_true=record.back_true,
        kappa_true=kappa_true(v),
        reflection_offset=reflection_offset(L, v, TimeBasis.TRUE_TIME),
    )


def equivalence_audit(L: float, eps: VelocityLike) -> EquivalenceAudit:
    """Both pipelines' observables side by side, with the ether bookkeeping kept apart."""

    v = as_velocity(eps)
    audit = EquivalenceAudit(
        length=L,
        eps=v,
        einstein=observables(L, v, SyncConvention.EINSTEIN),
        poincare=observables(L, v, SyncConvention.POINCARE_ETHER),
        ether=ether_audit(L, v),
    )
    logger.debug("Equivalence audit L=%r eps=%r: discrepancy %r", L, v.epsilon, audit.max_discrepancy())
    return audit


__all__ = [
    "EquivalenceAudit",
    "EtherAudit",
    "MOVING_FRAME",
    "ObservableSet",
    "RodMeasurement",
    "STATIONARY_FRAME",
    "clock_rate_ratio",
    "equivalence_audit",
    "ether_audit",
    "measure_rod",
    "observables",
]
