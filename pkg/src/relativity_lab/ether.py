"""True-time light propagation in the ether rest frame K.

Two stations A and B ride a rod that moves with velocity ``eps`` along +x. With the
contraction hypothesis the rod's ether-frame length is ``L*sqrt(1 - eps**2)``. A light
signal leaves A at the origin at ``t = 0``, reflects at B and returns to A; every event
is found by intersecting the light ray with the station worldline, and the closed-form
expressions for the same events are then checked against the geometry.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import ClosedFormMismatchError, NoIntersectionError, RelativityLabError
from .lorentz import Event, Velocity, VelocityLike, as_velocity

logger = logging.getLogger(__name__)

ETHER_FRAME = "K"
CLOSED_FORM_RTOL = 1e-9


@dataclass(frozen=True)
class Worldline:
    """Uniform motion ``x(t) = x0 + velocity*t`` in a given frame."""

    x0: float
    velocity: Velocity

    def __post_init__(self) -> None:
        object.__setattr__(self, "velocity", as_velocity(self.velocity))

    def position(self, t: float) -> float:
        return self.x0 + self.velocity.epsilon * t

    def event_at(self, t: float, frame_tag: str = ETHER_FRAME) -> Event:
        return Event(t=t, x=self.position(t), frame_tag=frame_tag)

    @classmethod
    def through(cls, first: Event, second: Event) -> "Worldline":
        """Build the worldline joining two events of the same frame."""

        if first.frame_tag != second.frame_tag:
            raise RelativityLabError(
                f"Events belong to different frames: {first.frame_tag!r} and {second.frame_tag!r}."
            )
        dt = second.t - first.t
        if dt == 0.0:
            raise RelativityLabError("Events on a worldline must be separated in time.")
        slope = (second.x - first.x) / dt
        return cls(x0=first.x - slope * first.t, velocity=Velocity(slope))


@dataclass(frozen=True)
class Station:
    """Clock station co-moving with the primed frame."""

    label: str
    x0: float
    eps: Velocity

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", as_velocity(self.eps))

    @property
    def worldline(self) -> Worldline:
        return Worldline(self.x0, self.eps)

    def position(self, t: float) -> float:
        return self.worldline.position(t)


@dataclass(frozen=True)
class RodConfiguration:
    """Rod of rest length ``L`` moving through the ether at ``eps``."""

    rest_length: float
    eps: Velocity
    contracted: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", as_velocity(self.eps))
        length = float(self.rest_length)
        if not math.isfinite(length) or length <= 0.0:
            raise RelativityLabError(f"Rod rest length must be positive, received {self.rest_length!r}.")
        object.__setattr__(self, "rest_length", length)

    @property
    def contracted_length(self) -> float:
        e = self.eps.epsilon
        return self.rest_length * math.sqrt((1.0 - e) * (1.0 + e))

    @property
    def ether_length(self) -> float:
        """Length actually occupied in the ether frame."""

        return self.contracted_length if self.contracted else self.rest_length

    def stations(self) -> tuple[Station, Station]:
        return Station("A", 0.0, self.eps), Station("B", self.ether_length, self.eps)


@dataclass(frozen=True)
class RoundTripRecord:
    """Emission at A, reflection at B and return at A, all in true time."""

    rod: RodConfiguration
    emission: Event
    reflection: Event
    arrival: Event

    @property
    def t1(self) -> float:
        return self.emission.t

    @property
    def t2(self) -> float:
        return self.reflection.t

    @property
    def t3(self) -> float:
        return self.arrival.t

    @property
    def xA1(self) -> float:
        return self.emission.x

    @property
    def xB2(self) -> float:
        return self.reflection.x

    @property
    def xA3(self) -> float:
        return self.arrival.x

    @property
    def forth_true(self) -> float:
        return self.t2 - self.t1

    @property
    def back_true(self) -> float:
        return self.t3 - self.t2

    def as_dict(self) -> dict[str, float | bool]:
        return {
            "rest_length": self.rod.rest_length,
            "eps": self.rod.eps.epsilon,
            "contracted": self.rod.contracted,
            "t1": self.t1,
            "t2": self.t2,
            "t3": self.t3,
            "xA1": self.xA1,
            "xB2": self.xB2,
            "xA3": self.xA3,
            "forth_true": self.forth_true,
            "back_true": self.back_true,
        }


def light_intersect(emission: Event, direction: int, target: Station) -> Event:
    """Return the event where a light ray from ``emission`` meets ``target``.

    The ray is ``x = x_e + direction*(t - t_e)``. The target must lie on the side the ray
    travels towards; otherwise the ray recedes from it forever.
    """

    if direction not in (1, -1):
        raise RelativityLabError(f"Light direction must be +1 or -1, received {direction!r}.")

    eps = target.eps.epsilon
    gap = target.position(emission.t) - emission.x
    # Ray and station close at rate (direction - eps), which has the sign of direction.
    if gap == 0.0 or math.copysign(1.0, gap) != direction:
        raise NoIntersectionError(
            f"Ray heading {direction:+d} from x={emission.x!r} at t={emission.t!r} never reaches station "
            f"{target.label} (currently at x={target.position(emission.t)!r})."
        )

    dt = gap / (direction - eps)
    t = emission.t + dt
    hit = Event(t=t, x=target.position(t), y=emission.y, z=emission.z, frame_tag=emission.frame_tag)
    logger.debug("Ray %+d from %s reaches %s at %s", direction, emission, target.label, hit)
    return hit


def closed_form_round_trip(rest_length: float, eps: VelocityLike, contracted: bool = True) -> dict[str, float]:
    """Closed-form true times and positions of the reflection and return events."""

    e = as_velocity(eps).epsilon
    L = rest_length
    if contracted:
        doppler = math.sqrt((1.0 + e) / (1.0 - e))
        root = math.sqrt((1.0 - e) * (1.0 + e))
        t2 = L * doppler
        t3 = 2.0 * L / root
        xB2 = e * L * doppler + L * root
    else:
        t2 = L / (1.0 - e)
        t3 = 2.0 * L / ((1.0 - e) * (1.0 + e))
        xB2 = t2
    return {"t2": t2, "t3": t3, "xB2": xB2, "xA3": e * t3}


def _check_closed_forms(record: RoundTripRecord, rtol: float) -> None:
    expected = closed_form_round_trip(record.rod.rest_length, record.rod.eps, record.rod.contracted)
    scale = max(record.rod.rest_length, 1e-300)
    for name, value in expected.items():
        actual = getattr(record, name)
        if abs(actual - value) > rtol * max(abs(value), scale):
            raise ClosedFormMismatchError(f"{name}: simulated {actual!r} differs from closed form {value!r}.")


def round_trip_true(L: float, eps: VelocityLike, contracted: bool = True, *, rtol: float = CLOSED_FORM_RTOL) -> RoundTripRecord:
    """Simulate the A -> B -> A light round trip in true time.

    ``contracted=False`` keeps the rod at its rest length in the ether, the configuration
    in which local time alone does not compensate the motion.
    """

    rod = RodConfiguration(L, eps, contracted)
    station_a, station_b = rod.stations()
    emission = Event(t=0.0, x=station_a.position(0.0), frame_tag=ETHER_FRAME)
    reflection = light_intersect(emission, 1, station_b)
    arrival = light_intersect(reflection, -1, station_a)

    record = RoundTripRecord(rod=rod, emission=emission, reflection=reflection, arrival=arrival)
    _check_closed_forms(record, rtol)
    logger.debug("True-time round trip L=%r eps=%r: t2=%r t3=%r", L, rod.eps.epsilon, record.t2, record.t3)
    return record


__all__ = [
    "CLOSED_FORM_RTOL",
    "ETHER_FRAME",
    "RodConfiguration",
    "RoundTripRecord",
    "Station",
    "Worldline",
    "closed_form_round_trip",
    "light_intersect",
    "round_trip_true",
]
