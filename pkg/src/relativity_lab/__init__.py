"""Special-relativity kinematics under Einstein's and Poincaré's synchronization conventions."""
from .config import ConfigSource, ScenarioConfig, load_scenario_config
from .errors import (
    BoostParameterError,
    ClosedFormMismatchError,
    ConfigError,
    ConstraintInconsistencyError,
    ConventionError,
    EventCoordinateError,
    NoIntersectionError,
    OrderingError,
    RelativityLabError,
    VelocityDomainError,
)
from .ether import RodConfiguration, RoundTripRecord, Station, Worldline, light_intersect, round_trip_true
from .grids import GridPoint, load_grid
from .lorentz import (
    Boost,
    Event,
    ScaleFunctionVerdict,
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
from .scenarios import (
    EquivalenceAudit,
    EtherAudit,
    ObservableSet,
    RodMeasurement,
    clock_rate_ratio,
    equivalence_audit,
    measure_rod,
)
from .synchronization import (
    FirstOrderRoundTrip,
    SyncConvention,
    SyncReport,
    TimeBasis,
    contraction_anomaly,
    einstein_offset,
    einstein_sync_check,
    first_order_round_trip,
    kappa_local,
    kappa_true,
    local_time,
    round_trip_report,
)

__all__ = [
    "Boost",
    "BoostParameterError",
    "ClosedFormMismatchError",
    "ConfigError",
    "ConfigSource",
    "ConstraintInconsistencyError",
    "ConventionError",
    "EquivalenceAudit",
    "EtherAudit",
    "FirstOrderRoundTrip",
    "Event",
    "EventCoordinateError",
    "GridPoint",
    "NoIntersectionError",
    "ObservableSet",
    "OrderingError",
    "RelativityLabError",
    "RodConfiguration",
    "RodMeasurement",
    "RoundTripRecord",
    "ScaleFunctionVerdict",
    "ScenarioConfig",
    "Station",
    "SyncConvention",
    "SyncReport",
    "TimeBasis",
    "Velocity",
    "VelocityDomainError",
    "Worldline",
    "boost_apply",
    "boost_compose",
    "boost_inverse",
    "boost_matrix",
    "clock_rate_ratio",
    "compose_velocities",
    "contraction_anomaly",
    "einstein_offset",
    "einstein_sync_check",
    "equivalence_audit",
    "first_order_round_trip",
    "gamma",
    "identity_boost",
    "interval",
    "kappa_local",
    "kappa_true",
    "light_intersect",
    "load_grid",
    "load_scenario_config",
    "local_time",
    "measure_rod",
    "rapidity",
    "round_trip_report",
    "round_trip_true",
    "solve_scale_function",
]
