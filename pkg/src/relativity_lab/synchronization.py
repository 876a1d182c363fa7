"""Distant-clock synchronization under Einstein's and Poincaré's conventions.

Einstein sets B's clock so that the forth and back light times are equal by definition.
Poincaré keeps the ether frame's true time as bookkeeping and lets the co-moving
observers read local time ``t' = k(t - eps*x)``. The Reichenbach parameter ``kappa``
(forth time over round-trip time) is ``(1 + eps)/2`` in true time and ``1/2`` in local
time.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from .errors import ClosedFormMismatchError, ConventionError, OrderingError
from .ether import CLOSED_FORM_RTOL, RoundTripRecord, round_trip_true
from .lorentz import Boost, Event, VelocityLike, as_velocity, boost_apply, gamma

logger = logging.getLogger(__name__)

SYNC_TOLERANCE = 1e-12


class SyncConvention(str, Enum):
    EINSTEIN = "einstein"
    POINCARE_ETHER = "poincare"


class TimeBasis(str, Enum):
    TRUE_TIME = "true"
    LOCAL_TIME = "local"


@dataclass(frozen=True)
class SyncReport:
    """Forth and back light travel times read under one convention and time basis."""

    forth: float
    back: float
    convention: SyncConvention
    time_basis: TimeBasis

    @property
    def kappa(self) -> float:
        return self.forth / (self.forth + self.back)

    @property
    def round_trip(self) -> float:
        return self.forth + self.back

    def as_dict(self) -> dict[str, float | str]:
        return {
            "convention": self.convention.value,
            "time_basis": self.time_basis.value,
            "forth": self.forth,
            "back": self.back,
            "kappa": self.kappa,
        }


def local_time(e: Event, eps: VelocityLike) -> float:
    """Poincaré's local time of ``e`` for observers moving at ``eps``; the t-row of the boost."""

    return boost_apply(Boost(as_velocity(eps), 1.0), e).t


def _check_order(*readings: float) -> None:
    if any(later <= earlier for earlier, later in zip(readings, readings[1:])):
        raise OrderingError(f"Clock readings must be strictly increasing, received {readings!r}.")


def einstein_sync_check(tA: float, tB: float, tA_return: float, *, tolerance: float = SYNC_TOLERANCE) -> bool:
    """True when ``tB - tA == tA_return - tB`` relative to the round-trip duration."""

    _check_order(tA, tB, tA_return)
    return abs((tB - tA) - (tA_return - tB)) <= tolerance * (tA_return - tA)


def einstein_offset(tA: float, tA_return: float) -> float:
    """B-clock reading at reflection that Einstein's definition prescribes."""

    _check_order(tA, tA_return)
    return tA + (tA_return - tA) / 2.0


def kappa_true(eps: VelocityLike) -> float:
    return (1.0 + as_velocity(eps).epsilon) / 2.0


def kappa_local(eps: VelocityLike) -> float:
    as_velocity(eps)
    return 0.5


def _local_readings(record: RoundTripRecord) -> tuple[float, float, float]:
    eps = record.rod.eps
    return (
        local_time(record.emission, eps),
        local_time(record.reflection, eps),
        local_time(record.arrival, eps),
    )


def _assert_close(name: str, actual: float, expected: float, scale: float) -> None:
    if abs(actual - expected) > CLOSED_FORM_RTOL * max(abs(expected), scale):
        raise ClosedFormMismatchError(f"{name}: simulated {actual!r} differs from closed form {expected!r}.")


def _poincare_report(L: float, eps: VelocityLike, basis: TimeBasis, contracted: bool) -> SyncReport:
    record = round_trip_true(L, eps, contracted)
    e = record.rod.eps.epsilon
    if basis is TimeBasis.TRUE_TIME:
        report = SyncReport(record.forth_true, record.back_true, SyncConvention.POINCARE_ETHER, basis)
        _assert_close("kappa_true", report.kappa, kappa_true(e), 0.5)
        return report

    tA1, tB2, tA3 = _local_readings(record)
    report = SyncReport(tB2 - tA1, tA3 - tB2, SyncConvention.POINCARE_ETHER, basis)
    expected = L if contracted else gamma(e) * L
    _assert_close("forth_local", report.forth, expected, L)
    _assert_close("back_local", report.back, expected, L)
    return report


def _einstein_report(L: float, eps: VelocityLike, basis: TimeBasis) -> SyncReport:
    as_velocity(eps)
    if basis is not TimeBasis.LOCAL_TIME:
        raise ConventionError("Einstein's convention has no true time; only the local time basis exists.")
    # The rod rests in the observers' own frame, where the light speed is 1 in both senses.
    record = round_trip_true(L, 0.0)
    tB = einstein_offset(record.t1, record.t3)
    if not einstein_sync_check(record.t1, tB, record.t3):
        raise ClosedFormMismatchError("Einstein offset failed its own synchronization check.")
    return SyncReport(tB - record.t1, record.t3 - tB, SyncConvention.EINSTEIN, basis)


def round_trip_report(
    L: float,
    eps: VelocityLike,
    basis: TimeBasis | str,
    convention: SyncConvention | str = SyncConvention.POINCARE_ETHER,
    *,
    contracted: bool = True,
) -> SyncReport:
    """Forth/back light times and ``kappa`` for the A -> B -> A exchange."""

    basis = TimeBasis(basis)
    convention = SyncConvention(convention)
    if convention is SyncConvention.EINSTEIN:
        report = _einstein_report(L, eps, basis)
    else:
        report = _poincare_report(L, eps, basis, contracted)
    logger.debug("Round-trip report L=%r eps=%r: %s", L, float(as_velocity(eps)), report)
    return report


def reflection_offset(L: float, eps: VelocityLike, basis: TimeBasis | str) -> float:
    """Observed reflection reading minus the reading Einstein's definition prescribes.

    Zero in local time; ``gamma*eps*L`` in true time.
    """

    basis = TimeBasis(basis)
    record = round_trip_true(L, eps)
    if basis is TimeBasis.TRUE_TIME:
        tA1, tB2, tA3 = record.t1, record.t2, record.t3
    else:
        tA1, tB2, tA3 = _local_readings(record)
    return tB2 - einstein_offset(tA1, tA3)


def contraction_anomaly(L: float, eps: VelocityLike) -> float:
    """Relative excess of the local-time round trip when the rod is not really contracted.

    Evaluates to ``gamma - 1``, a second-order effect in ``eps``; the contracted rod gives 0.
    """

    report = round_trip_report(L, eps, TimeBasis.LOCAL_TIME, contracted=False)
    return report.round_trip / (2.0 * L) - 1.0


@dataclass(frozen=True)
class FirstOrderRoundTrip:
    """Forth and back times read with the first-order local time ``t - eps*x'``.

    ``x' = x - eps*t`` is the Galilean co-moving abscissa and the rod keeps its rest
    length in the ether frame. The first-order terms of the two legs cancel; what is
    left is ``2*eps**3*L/(1 - eps**2)`` between them and a round trip of
    ``2*gamma**2*L``.
    """

    forth: float
    back: float

    @property
    def asymmetry(self) -> float:
        return self.forth - self.back

    @property
    def round_trip(self) -> float:
        return self.forth + self.back

    def as_dict(self) -> dict[str, float]:
        return {"forth": self.forth, "back": self.back, "asymmetry": self.asymmetry}


def first_order_local_time(e: Event, eps: VelocityLike) -> float:
    v = as_velocity(eps).epsilon
    return e.t - v * (e.x - v * e.t)


def first_order_round_trip(L: float, eps: VelocityLike) -> FirstOrderRoundTrip:
    """Read the uncontracted round trip with the first-order local time at A and B."""

    record = round_trip_true(L, eps, contracted=False)
    tA1, tB2, tA3 = (first_order_local_time(ev, eps) for ev in (record.emission, record.reflection, record.arrival))
    return FirstOrderRoundTrip(forth=tB2 - tA1, back=tA3 - tB2)


__all__ = [
    "SYNC_TOLERANCE",
    "FirstOrderRoundTrip",
    "SyncConvention",
    "SyncReport",
    "TimeBasis",
    "contraction_anomaly",
    "einstein_offset",
    "einstein_sync_check",
    "first_order_local_time",
    "first_order_round_trip",
    "kappa_local",
    "kappa_true",
    "local_time",
    "reflection_offset",
    "round_trip_report",
]
