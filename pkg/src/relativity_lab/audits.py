"""Batch engines behind the command-line subcommands.

Each ``run_*`` function takes a :class:`~relativity_lab.config.ScenarioConfig`, performs
the computation in natural units and returns a :class:`~relativity_lab.reports.Report`
whose assertions decide the process exit status.
"""
from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import ScenarioConfig
from .errors import ConfigError
from .ether import closed_form_round_trip, round_trip_true
from .grids import GridPoint
from .lorentz import (
    Boost,
    Event,
    Velocity,
    boost_apply,
    boost_compose,
    boost_inverse,
    boost_matrix,
    compose_velocities,
    gamma,
    identity_boost,
    interval,
    rapidity,
    solve_scale_function,
)
from .reports import Report, read_sweep, relative_deviation, sweep_frame, write_sweep
from .scenarios import MOVING_FRAME, STATIONARY_FRAME, equivalence_audit, measure_rod
from .synchronization import (
    SyncConvention,
    TimeBasis,
    contraction_anomaly,
    first_order_round_trip,
    kappa_local,
    kappa_true,
    local_time,
    reflection_offset,
    round_trip_report,
)

logger = logging.getLogger(__name__)

RANDOM_EPS_BOUND = 0.99
RANDOM_SCALE_RANGE = (0.1, 10.0)
RANDOM_COORDINATE_BOUND = 10.0
RANDOM_LENGTH_RANGE = (0.1, 10.0)
GROUP_PARAMETER_TOLERANCE = 1e-12
SCALE_FUNCTION_SAMPLES = 99
ASYMMETRY_THRESHOLD = 1e-6
ASYMMETRY_MIN_EPS = 0.1


def _report_times(config: ScenarioConfig, values: dict[str, float], time_keys: Iterable[str]) -> dict[str, float]:
    keys = set(time_keys)
    return {key: config.to_report_time(value) if key in keys else value for key, value in values.items()}


def run_roundtrip(config: ScenarioConfig, *, contracted: bool = True) -> Report:
    """A -> B -> A light exchange in true and local time with closed-form checks."""

    L, eps = config.length, config.eps
    e = eps.epsilon
    report = Report("roundtrip", config.as_dict())
    record = round_trip_true(L, eps, contracted)
    local = {
        "tA1": local_time(record.emission, eps),
        "tB2": local_time(record.reflection, eps),
        "tA3": local_time(record.arrival, eps),
    }
    local["forth"] = local["tB2"] - local["tA1"]
    local["back"] = local["tA3"] - local["tB2"]

    true_values = {key: value for key, value in record.as_dict().items() if key not in ("rest_length", "eps")}
    report.results["true_time"] = _report_times(config, true_values, ("t1", "t2", "t3", "forth_true", "back_true"))
    report.results["local_time"] = _report_times(config, local, local.keys())

    sync_reports = []
    for convention in config.conventions():
        for basis in config.bases():
            if convention is SyncConvention.EINSTEIN and basis is TimeBasis.TRUE_TIME:
                continue
            sync = round_trip_report(L, eps, basis, convention, contracted=contracted)
            sync_reports.append(_report_times(config, sync.as_dict(), ("forth", "back")))
    report.results["sync_reports"] = sync_reports
    report.results["kappa"] = {
        "true": record.forth_true / (record.forth_true + record.back_true),
        "local": local["forth"] / (local["forth"] + local["back"]),
    }

    tol = config.tolerance
    for name, expected in closed_form_round_trip(L, eps, contracted).items():
        report.check(f"closed_form_{name}", relative_deviation(getattr(record, name), expected, L), tol)
    report.check(
        "light_slope_forth", relative_deviation(abs(record.xB2 - record.xA1), record.forth_true, L), tol
    )
    report.check("light_slope_back", relative_deviation(abs(record.xA3 - record.xB2), record.back_true, L), tol)

    local_expected = L if contracted else gamma(eps) * L
    report.check("local_forth", relative_deviation(local["forth"], local_expected, L), tol)
    report.check("local_back", relative_deviation(local["back"], local_expected, L), tol)
    report.check("kappa_true_formula", abs(report.results["kappa"]["true"] - kappa_true(eps)), tol)
    report.check("kappa_local_half", abs(report.results["kappa"]["local"] - kappa_local(eps)), tol)

    if contracted:
        report.check("einstein_offset_local", abs(reflection_offset(L, eps, TimeBasis.LOCAL_TIME)) / L, tol)
    else:
        anomaly = contraction_anomaly(L, eps)
        report.results["contraction_anomaly"] = anomaly
        report.check("contraction_anomaly_second_order", abs(anomaly - (gamma(eps) - 1.0)), tol)
        first_order = first_order_round_trip(L, eps)
        report.results["first_order_local"] = _report_times(config, first_order.as_dict(), ("forth", "back", "asymmetry"))
        report.check(
            "first_order_asymmetry_third_order",
            relative_deviation(first_order.asymmetry, 2.0 * e**3 * L / ((1.0 - e) * (1.0 + e)), L),
            tol,
        )

    logger.info("Round trip L=%r eps=%r: %s", L, e, report.verdict)
    return report


def kappa_grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Evenly spaced velocities from ``lo`` to ``hi`` inclusive.

    ``lo`` is kept bit for bit and a last point within rounding of ``hi`` is snapped
    to it. Interior points drop accumulation noise (``-0.8 + 0.2`` becomes ``-0.6``)
    but are otherwise left at full precision.
    """

    lo = Velocity(lo).epsilon
    hi = Velocity(hi).epsilon
    if not step > 0.0 or not math.isfinite(step):
        raise ConfigError(f"Sweep step must be positive, received {step!r}.")
    if lo > hi:
        raise ConfigError(f"Sweep start {lo!r} must not exceed sweep end {hi!r}.")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    offsets = step * np.arange(count)
    values = lo + offsets
    tidy = np.round(values, 12)
    # accumulated error is bounded by a few ulps of |lo| + i*step
    noise_only = np.abs(tidy - values) <= 4.0 * np.spacing(abs(lo) + offsets)
    values = np.where(noise_only, tidy, values)
    values[0] = lo
    if abs(values[-1] - hi) <= 1e-9 * step:
        values[-1] = hi
    return np.clip(values, lo, hi) + 0.0


def run_kappa_sweep(config: ScenarioConfig, lo: float, hi: float, step: float, out: str | Path) -> Report:
    """Simulate ``kappa`` across a velocity grid, write the CSV and re-read it."""

    grid = kappa_grid(lo, hi, step)
    L = config.length
    rows = []
    for eps in grid:
        rows.append(
            {
                "eps": float(eps),
                "kappa_true_sim": round_trip_report(L, eps, TimeBasis.TRUE_TIME).kappa,
                "kappa_true_formula": kappa_true(eps),
                "kappa_local": round_trip_report(L, eps, TimeBasis.LOCAL_TIME).kappa,
            }
        )
    frame = sweep_frame(rows)
    path = write_sweep(frame, out)
    reread = read_sweep(path)

    report = Report("kappa-sweep", config.as_dict())
    report.results.update({"from": lo, "to": hi, "step": step, "rows": len(frame), "out": str(path)})

    tol = config.tolerance
    sim = frame["kappa_true_sim"].to_numpy()
    report.check("kappa_true_sim_vs_formula", float(np.max(np.abs(sim - frame["kappa_true_formula"].to_numpy()))), tol)
    report.check("kappa_local_half", float(np.max(np.abs(frame["kappa_local"].to_numpy() - 0.5))), tol)
    report.check("csv_lossless", float(np.max(np.abs(reread.to_numpy() - frame.to_numpy()))), 0.0)

    by_eps = dict(zip(frame["eps"], sim))
    pairs = [(value, -value) for value in by_eps if value > 0.0 and -value in by_eps]
    if pairs:
        symmetry = max(abs(by_eps[a] + by_eps[b] - 1.0) for a, b in pairs)
        report.check("kappa_true_reversal_symmetry", symmetry, tol)

    logger.info("Kappa sweep %r..%r step %r: %d rows, %s", lo, hi, step, len(frame), report.verdict)
    return report


def _max_relative(actual: Sequence[float], expected: Sequence[float], floor: float = 1.0) -> float:
    a = np.asarray(actual, dtype=float)
    b = np.asarray(expected, dtype=float)
    return float(np.max(np.abs(a - b)) / max(float(np.max(np.abs(b))), floor))


def _boost_deviation(first: Boost, second: Boost) -> float:
    return max(
        abs(first.epsilon.epsilon - second.epsilon.epsilon),
        abs(first.scale - second.scale) / max(first.scale, second.scale),
    )


def run_group_audit(config: ScenarioConfig, samples: int) -> Report:
    """Closure, associativity, identity, inverse, velocity and interval batteries."""

    if samples < 1:
        raise ConfigError(f"samples must be at least 1, received {samples!r}.")
    rng = np.random.default_rng(config.seed)
    eps = rng.uniform(-RANDOM_EPS_BOUND, RANDOM_EPS_BOUND, size=(samples, 3))
    scales = rng.uniform(*RANDOM_SCALE_RANGE, size=(samples, 3))
    coords = rng.uniform(-RANDOM_COORDINATE_BOUND, RANDOM_COORDINATE_BOUND, size=(samples, 4))

    worst = dict.fromkeys(
        ("closure", "matrix", "associativity", "identity", "inverse", "rapidity", "interval", "interval_scaled"),
        0.0,
    )
    subluminal_margin = 1.0
    identity = identity_boost()

    for i in range(samples):
        a, b, c = (Boost(Velocity(eps[i, j]), scales[i, j]) for j in range(3))
        event = Event(*coords[i])

        composed = boost_compose(a, b)
        direct = boost_apply(composed, event).as_tuple()
        chained = boost_apply(b, boost_apply(a, event)).as_tuple()
        worst["closure"] = max(worst["closure"], _max_relative(direct, chained))
        worst["matrix"] = max(
            worst["matrix"], _max_relative(boost_matrix(composed), boost_matrix(b) @ boost_matrix(a))
        )

        worst["associativity"] = max(
            worst["associativity"],
            _boost_deviation(boost_compose(boost_compose(a, b), c), boost_compose(a, boost_compose(b, c))),
        )
        worst["identity"] = max(
            worst["identity"],
            _boost_deviation(boost_compose(a, identity), a),
            _boost_deviation(boost_compose(identity, a), a),
        )
        worst["inverse"] = max(
            worst["inverse"],
            _boost_deviation(boost_compose(a, boost_inverse(a)), identity),
            _boost_deviation(boost_compose(boost_inverse(a), a), identity),
        )

        velocity = compose_velocities(a.epsilon, b.epsilon).epsilon
        subluminal_margin = min(subluminal_margin, 1.0 - abs(velocity))
        worst["rapidity"] = max(worst["rapidity"], abs(math.tanh(rapidity(a.epsilon) + rapidity(b.epsilon)) - velocity))

        norm = max(sum(value * value for value in event.as_tuple()), 1e-300)
        physical = boost_apply(Boost(a.epsilon), event)
        worst["interval"] = max(worst["interval"], abs(interval(physical) - interval(event)) / norm)
        scaled = boost_apply(a, event)
        worst["interval_scaled"] = max(
            worst["interval_scaled"], abs(interval(scaled) - a.scale**2 * interval(event)) / (a.scale**2 * norm)
        )

    grid = np.linspace(-RANDOM_EPS_BOUND, RANDOM_EPS_BOUND, SCALE_FUNCTION_SAMPLES)
    grid_verdict = solve_scale_function(grid)
    random_verdict = solve_scale_function(eps[: min(samples, SCALE_FUNCTION_SAMPLES), 0])

    report = Report("group-audit", config.as_dict())
    report.results.update(
        {
            "samples": samples,
            "seed": config.seed,
            "max_deviation": dict(worst),
            "subluminal_margin": subluminal_margin,
            "scale_function_grid": grid_verdict.as_dict(),
            "scale_function_random": random_verdict.as_dict(),
        }
    )

    tol = config.tolerance
    report.check("closure", worst["closure"], tol)
    report.check("closure_matrix", worst["matrix"], tol)
    report.check("associativity", worst["associativity"], GROUP_PARAMETER_TOLERANCE)
    report.check("identity", worst["identity"], GROUP_PARAMETER_TOLERANCE)
    report.check("inverse", worst["inverse"], GROUP_PARAMETER_TOLERANCE)
    report.check_exceeds("velocity_subluminal_closure", subluminal_margin, 0.0)
    report.check("velocity_rapidity_addition", worst["rapidity"], tol)
    report.check("interval_invariance", worst["interval"], tol)
    report.check("interval_scales_by_l_squared", worst["interval_scaled"], tol)
    report.check("scale_function_grid", grid_verdict.max_deviation, GROUP_PARAMETER_TOLERANCE)
    report.check("scale_function_random", random_verdict.max_deviation, GROUP_PARAMETER_TOLERANCE)

    logger.info("Group audit of %d samples (seed %d): %s", samples, config.seed, report.verdict)
    return report


def random_grid(count: int, seed: int) -> list[GridPoint]:
    if count < 1:
        raise ConfigError(f"Grid size must be at least 1, received {count!r}.")
    if seed < 0:
        raise ConfigError(f"Seed must be non-negative, received {seed!r}.")
    rng = np.random.default_rng(seed)
    lengths = rng.uniform(*RANDOM_LENGTH_RANGE, size=count)
    velocities = rng.uniform(-RANDOM_EPS_BOUND, RANDOM_EPS_BOUND, size=count)
    return [GridPoint(float(length), Velocity(float(eps))) for length, eps in zip(lengths, velocities)]


def run_equivalence(config: ScenarioConfig, points: Optional[Sequence[GridPoint]] = None) -> Report:
    """Compare Einstein and Poincaré observables over a grid of scenarios."""

    points = list(points) if points else [GridPoint(config.length, config.eps)]
    audits = [equivalence_audit(point.length, point.eps) for point in points]
    audits.sort(key=lambda audit: (audit.eps.epsilon, audit.length))

    report = Report("equivalence", config.as_dict())
    report.results["points"] = [
        {"length": audit.length, "eps": audit.eps.epsilon, "max_discrepancy": audit.max_discrepancy()}
        for audit in audits
    ]

    tol = config.tolerance
    discrepancy = max(audit.max_discrepancy() for audit in audits)
    covariance = max(
        max(relative_deviation(audit.poincare.forth_local, audit.length, audit.length),
            relative_deviation(audit.poincare.back_local, audit.length, audit.length))
        for audit in audits
    )
    report.results["max_discrepancy"] = discrepancy
    report.check("observational_equivalence", discrepancy, tol)
    report.check("light_speed_covariance", covariance, tol)

    moving = [audit for audit in audits if abs(audit.eps.epsilon) >= ASYMMETRY_MIN_EPS]
    if moving:
        asymmetry = min(abs(audit.ether.forth_true - audit.ether.back_true) / audit.length for audit in moving)
        report.results["min_true_time_asymmetry"] = asymmetry
        report.check_exceeds("true_time_asymmetry", asymmetry, ASYMMETRY_THRESHOLD)

    logger.info("Equivalence over %d point(s): max discrepancy %r, %s", len(audits), discrepancy, report.verdict)
    return report


def run_rod(config: ScenarioConfig) -> Report:
    """Rod measurements per convention, in both directions of the frame pair."""

    L, eps = config.length, config.eps
    report = Report("rod", config.as_dict())
    expected_cross = L / gamma(eps)
    tol = config.tolerance
    measurements = []
    for convention in config.conventions():
        pair = {frame: measure_rod(L, eps, convention, rod_frame=frame) for frame in (MOVING_FRAME, STATIONARY_FRAME)}
        for frame, measurement in pair.items():
            measurements.append(measurement.as_dict())
            label = f"{convention.value}_{'moving' if frame == MOVING_FRAME else 'stationary'}_rod"
            report.check(f"{label}_home_length", relative_deviation(measurement.measured_in_home_frame, L, L), tol)
            report.check(
                f"{label}_cross_length",
                relative_deviation(measurement.measured_from_other_frame, expected_cross, L),
                tol,
            )
        report.check(
            f"{convention.value}_reciprocity",
            relative_deviation(
                pair[STATIONARY_FRAME].measured_from_other_frame, pair[MOVING_FRAME].measured_from_other_frame, L
            ),
            tol,
        )
    report.results["measurements"] = measurements
    report.results["expected_cross_length"] = expected_cross
    return report


def run_compose(config: ScenarioConfig, eps2: float, scale1: float = 1.0, scale2: float = 1.0) -> Report:
    """Compose ``(eps, scale1)`` then ``(eps2, scale2)`` and cross-check the result."""

    first = Boost(config.eps, scale1)
    second = Boost(Velocity(eps2), scale2)
    composed = boost_compose(first, second)
    velocity = compose_velocities(first.epsilon, second.epsilon)

    report = Report("compose", config.as_dict())
    report.results.update(
        {
            "first": first.as_dict(),
            "second": second.as_dict(),
            "composed": composed.as_dict(),
            "composed_velocity": velocity.epsilon,
            "inverse_of_composed": boost_inverse(composed).as_dict(),
        }
    )
    tol = config.tolerance
    report.check(
        "matrix_product",
        _max_relative(boost_matrix(composed), boost_matrix(second) @ boost_matrix(first)),
        tol,
    )
    report.check(
        "rapidity_addition",
        abs(math.tanh(rapidity(first.epsilon) + rapidity(second.epsilon)) - velocity.epsilon),
        tol,
    )
    report.check("inverse", _boost_deviation(boost_compose(composed, boost_inverse(composed)), identity_boost()), tol)
    return report


__all__ = [
    "ASYMMETRY_THRESHOLD",
    "kappa_grid",
    "random_grid",
    "run_compose",
    "run_equivalence",
    "run_group_audit",
    "run_kappa_sweep",
    "run_rod",
    "run_roundtrip",
]
