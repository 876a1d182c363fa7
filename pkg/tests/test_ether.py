"""Tests for true-time light propagation in the ether frame."""
import math

import pytest
from hypothesis import given, settings, strategies as st

from relativity_lab.errors import NoIntersectionError, RelativityLabError
from relativity_lab.ether import (
    RodConfiguration,
    Station,
    Worldline,
    closed_form_round_trip,
    light_intersect,
    round_trip_true,
)
from relativity_lab.lorentz import Event, gamma

eps_strategy = st.floats(min_value=-0.99, max_value=0.99, allow_nan=False, allow_infinity=False)
length_strategy = st.floats(min_value=0.01, max_value=100.0, allow_nan=False, allow_infinity=False)


class TestLightIntersect:
    def test_static_target(self):
        hit = light_intersect(Event(0.0, 0.0), 1, Station("B", 1.0, 0.0))
        assert (hit.t, hit.x) == pytest.approx((1.0, 1.0))

    def test_receding_target(self):
        hit = light_intersect(Event(0.0, 0.0), 1, Station("B", 0.8, 0.6))
        assert (hit.t, hit.x) == pytest.approx((2.0, 2.0), rel=1e-12)

    def test_approaching_target(self):
        hit = light_intersect(Event(2.0, 2.0), -1, Station("A", 0.0, 0.6))
        assert (hit.t, hit.x) == pytest.approx((2.5, 1.5), rel=1e-12)

    def test_ray_heading_away_never_meets(self):
        with pytest.raises(NoIntersectionError):
            light_intersect(Event(0.0, 0.0), -1, Station("B", 1.0, 0.6))

    def test_target_at_emission_point_is_rejected(self):
        with pytest.raises(NoIntersectionError):
            light_intersect(Event(0.0, 0.0), 1, Station("A", 0.0, 0.6))

    def test_direction_must_be_unit(self):
        with pytest.raises(RelativityLabError):
            light_intersect(Event(0.0, 0.0), 0, Station("B", 1.0, 0.0))

    def test_transverse_coordinates_pass_through(self):
        hit = light_intersect(Event(0.0, 0.0, 3.0, -1.0), 1, Station("B", 1.0, 0.0))
        assert (hit.y, hit.z) == (3.0, -1.0)


class TestWorldline:
    def test_through_two_events(self):
        line = Worldline.through(Event(0.0, 1.0), Event(2.0, 2.0))
        assert line.velocity.epsilon == pytest.approx(0.5)
        assert line.position(4.0) == pytest.approx(3.0)

    def test_through_requires_same_frame(self):
        with pytest.raises(RelativityLabError):
            Worldline.through(Event(0.0, 0.0, frame_tag="K"), Event(1.0, 0.5, frame_tag="K'"))


class TestRodConfiguration:
    def test_contracted_length(self):
        rod = RodConfiguration(1.0, 0.6)
        assert rod.contracted_length == pytest.approx(0.8, rel=1e-12)
        assert rod.ether_length == rod.contracted_length

    def test_rigid_rod_keeps_rest_length(self):
        assert RodConfiguration(1.0, 0.6, contracted=False).ether_length == 1.0

    def test_rejects_non_positive_length(self):
        with pytest.raises(RelativityLabError):
            RodConfiguration(0.0, 0.1)


class TestRoundTripTrue:
    def test_ether_rest_case(self):
        record = round_trip_true(1.0, 0.0)
        assert (record.t2, record.t3) == (1.0, 2.0)
        assert record.forth_true == record.back_true == 1.0

    def test_moving_rod(self):
        record = round_trip_true(1.0, 0.6)
        assert record.t1 == 0.0 and record.xA1 == 0.0
        assert record.t2 == pytest.approx(2.0, rel=1e-12)
        assert record.t3 == pytest.approx(2.5, rel=1e-12)
        assert record.xB2 == pytest.approx(2.0, rel=1e-12)
        assert record.xA3 == pytest.approx(1.5, rel=1e-12)
        assert record.forth_true == pytest.approx(2.0, rel=1e-12)
        assert record.back_true == pytest.approx(0.5, rel=1e-12)

    def test_rigid_rod_closed_forms(self):
        record = round_trip_true(1.0, 0.6, contracted=False)
        assert record.t2 == pytest.approx(2.5, rel=1e-12)
        assert record.t3 == pytest.approx(2.0 / 0.64, rel=1e-12)

    @given(length=length_strategy, eps=eps_strategy)
    @settings(max_examples=1000, deadline=None)
    def test_geometry_matches_closed_forms(self, length, eps):
        record = round_trip_true(length, eps)
        for name, expected in closed_form_round_trip(length, eps).items():
            assert getattr(record, name) == pytest.approx(expected, rel=1e-12, abs=1e-12 * length)

    @given(length=length_strategy, eps=eps_strategy)
    @settings(max_examples=300, deadline=None)
    def test_events_ordered_and_lightlike(self, length, eps):
        record = round_trip_true(length, eps)
        assert record.t1 < record.t2 < record.t3
        assert abs(record.xB2 - record.xA1) == pytest.approx(record.forth_true, rel=1e-12)
        assert abs(record.xA3 - record.xB2) == pytest.approx(record.back_true, rel=1e-12)

    @given(length=length_strategy, eps=eps_strategy)
    @settings(max_examples=300, deadline=None)
    def test_reversal_symmetry(self, length, eps):
        forward = round_trip_true(length, eps)
        reverse = round_trip_true(length, -eps)
        assert reverse.forth_true == pytest.approx(forward.back_true, rel=1e-12)
        assert reverse.back_true == pytest.approx(forward.forth_true, rel=1e-12)
        assert reverse.t3 == pytest.approx(forward.t3, rel=1e-12)

    def test_round_trip_grows_with_speed(self):
        speeds = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99]
        totals = [round_trip_true(1.0, eps).t3 for eps in speeds]
        assert all(later > earlier for earlier, later in zip(totals, totals[1:]))
        assert totals[-1] == pytest.approx(2.0 * gamma(0.99), rel=1e-12)

    def test_stations_ride_the_rod(self):
        record = round_trip_true(2.0, 0.3)
        assert record.xA3 == pytest.approx(0.3 * record.t3, rel=1e-12)
        assert record.xB2 == pytest.approx(2.0 * math.sqrt(1 - 0.09) + 0.3 * record.t2, rel=1e-12)
