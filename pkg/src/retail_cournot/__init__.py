"""Dynamics and stability of multi-market Cournot competition with coupled scale costs."""

from .baseline import (
    BaselineConfig,
    BaselineEquilibrium,
    baseline_fisher,
    baseline_theocharis,
    fisher_trajectory,
)
from .dynamics import (
    BifurcationData,
    SpectrumReport,
    StabilityInterval,
    bifurcation_scan,
    build_jacobian,
    characteristic_product,
    classify_stability,
    eigenvalues_closed_form,
    stability_interval,
    stability_zone_scan,
)
from .errors import (
    ConvergenceError,
    CournotError,
    NotSymmetricError,
    NumericalError,
    ScenarioError,
    ShapeError,
    SingularMatrixError,
    SingularParameterError,
    ValidationError,
)
from .model import (
    Classification,
    GameConfig,
    Mode,
    StabilityClass,
    Trajectory,
    ValidationReport,
    best_response,
    default_initial_state,
    firm_cost,
    nash_duopoly_closed_form,
    nash_equilibrium,
    nash_linear_solve,
    price,
    profit,
    simulate,
    step,
    validate,
)
from .numerics import EigenResult, solve_linear, symmetric_eigenvalues
from .scenario import Scenario, SimulationOptions, loads_scenario, parse_scenario

REFERENCE_INTERCEPTS = (200.0, 150.0, 100.0)
REFERENCE_COSTS = (20.0, 40.0)


def reference_config(d: float) -> GameConfig:
    """Two firms, three markets: the reference parameter set."""
    return GameConfig(REFERENCE_INTERCEPTS, REFERENCE_COSTS, d)


__version__ = "0.1.0"
