"""Multi-market Cournot oligopoly with a globally coupled quadratic cost.

N firms sell in M separated markets. Market j clears at P_j = a_j - Q_j and
firm i pays c_i * Q^i + d * (Q^i)**2 on its total output Q^i across all
markets, so d < 0 gives economies of scale and d > 0 diseconomies.

States are numpy arrays of shape (N, M): row i holds firm i's quantities.
Flattening in C order gives the firm-major layout used by the Jacobian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ShapeError, SingularParameterError, SingularMatrixError, ValidationError
from .numerics import solve_linear

DIVERGENCE_THRESHOLD = 1e12


class Mode(str, enum.Enum):
    RAW = "raw"
    CLIPPED = "clipped"


class Classification(str, enum.Enum):
    FEASIBLE = "Feasible"
    ADMISSIBLE_ONLY = "AdmissibleOnly"
    DIVERGENT = "Divergent"


class StabilityClass(str, enum.Enum):
    STABLE = "Stable"
    NEUTRAL = "NeutrallyStable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class GameConfig:
    market_intercepts: tuple[float, ...]
    firm_costs: tuple[float, ...]
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "market_intercepts", tuple(float(x) for x in self.market_intercepts))
        object.__setattr__(self, "firm_costs", tuple(float(x) for x in self.firm_costs))
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def n_firms(self) -> int:
        return len(self.firm_costs)

    @property
    def n_markets(self) -> int:
        return len(self.market_intercepts)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_firms, self.n_markets)

    @property
    def a(self) -> np.ndarray:
        return np.array(self.market_intercepts)

    @property
    def c(self) -> np.ndarray:
        return np.array(self.firm_costs)

    def with_scale(self, d: float) -> "GameConfig":
        return replace(self, scale=d)


# Rule identifiers and their messages. Hard rules block every computation,
# soft rules only warn: the economically inadmissible range is still simulable.
RULES = {
    "no-markets": "at least one market is required",
    "no-firms": "at least one firm is required",
    "intercept-nonpositive": "market intercept a_j must be positive",
    "cost-nonpositive": "marginal cost c_i must be positive",
    "intercept-below-cost": "intercept below marginal cost (a_j >= c_i required)",
    "second-order-condition": "second-order condition d>-1 violated",
    "scale-below-admissible": "d <= -1/(2M): outside the admissible scale range",
    "negative-marginal-cost": "d < -min(c_i)/(2*sum(a_j)): marginal cost can turn negative",
}


@dataclass(frozen=True)
class ValidationReport:
    hard_violations: tuple[str, ...] = ()
    soft_flags: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.hard_violations

    def messages(self, hard_only: bool = False) -> list[str]:
        rules = self.hard_violations if hard_only else self.hard_violations + self.soft_flags
        return [f"{rule}: {RULES[rule]}" for rule in rules]


def validate(config: GameConfig) -> ValidationReport:
    hard, soft = [], []
    a, c, d = config.a, config.c, config.scale
    if a.size == 0:
        hard.append("no-markets")
    if c.size == 0:
        hard.append("no-firms")
    if np.any(a <= 0):
        hard.append("intercept-nonpositive")
    if np.any(c <= 0):
        hard.append("cost-nonpositive")
    if a.size and c.size and a.min() < c.max():
        hard.append("intercept-below-cost")
    if not d > -1:
        hard.append("second-order-condition")
    if a.size and d <= -1 / (2 * a.size):
        soft.append("scale-below-admissible")
    if a.size and c.size and a.sum() > 0 and d < -c.min() / (2 * a.sum()):
        soft.append("negative-marginal-cost")
    return ValidationReport(tuple(hard), tuple(soft))


def require_valid(config: GameConfig) -> None:
    if config.scale == -1:
        raise SingularParameterError("d = -1 makes the best response undefined")
    report = validate(config)
    if not report.ok:
        raise ValidationError(report)


def as_state(config: GameConfig, state) -> np.ndarray:
    """Coerce ``state`` to an (N, M) float array; a flat firm-major vector is accepted."""
    q = np.array(state, dtype=float)
    if q.ndim == 1 and q.size == config.n_firms * config.n_markets:
        q = q.reshape(config.shape)
    if q.shape != config.shape:
        raise ShapeError(f"state has shape {q.shape}, expected {config.shape}")
    return q


def market_supply(state: np.ndarray) -> np.ndarray:
    return state.sum(axis=-2)


def firm_totals(state: np.ndarray) -> np.ndarray:
    return state.sum(axis=-1)


def _check_index(index: int, size: int, what: str) -> None:
    if not 0 <= index < size:
        raise IndexError(f"{what} index {index} out of range 0..{size - 1}")


def price(config: GameConfig, state, market: int) -> float:
    """Price in ``market``; negative when supply exceeds the intercept."""
    require_valid(config)
    _check_index(market, config.n_markets, "market")
    q = as_state(config, state)
    return config.market_intercepts[market] - float(q[:, market].sum())


def firm_cost(config: GameConfig, state, firm: int) -> float:
    require_valid(config)
    _check_index(firm, config.n_firms, "firm")
    total = float(as_state(config, state)[firm].sum())
    return config.firm_costs[firm] * total + config.scale * total**2


def profit(config: GameConfig, state, firm: int) -> float:
    require_valid(config)
    _check_index(firm, config.n_firms, "firm")
    q = as_state(config, state)
    revenue = float(q[firm] @ (config.a - market_supply(q)))
    return revenue - firm_cost(config, q, firm)


def best_response(config: GameConfig, state, firm: int, market: int) -> float:
    """Profit-maximising quantity of ``firm`` in ``market`` given everyone else.

    Rivals' supply in the same market and the firm's own sales elsewhere
    enter; the firm's current quantity in ``market`` does not.
    """
    require_valid(config)
    _check_index(firm, config.n_firms, "firm")
    _check_index(market, config.n_markets, "market")
    q = as_state(config, state)
    d = config.scale
    residual_supply = q[:, market].sum() - q[firm, market]
    other_markets = q[firm].sum() - q[firm, market]
    numerator = (
        config.market_intercepts[market] - residual_supply - config.firm_costs[firm] - 2 * d * other_markets
    )
    return float(numerator / (2 * (1 + d)))


def naive_map(q: np.ndarray, a: np.ndarray, c: np.ndarray, d) -> np.ndarray:
    """Simultaneous best responses for states of shape (..., N, M).

    ``d`` is a scalar or broadcasts against the leading dimensions, which
    lets a whole parameter grid advance in one call.
    """
    residual_supply = q.sum(axis=-2, keepdims=True) - q
    other_markets = q.sum(axis=-1, keepdims=True) - q
    return (a - residual_supply - c[:, None] - 2 * d * other_markets) / (2 * (1 + d))


def step(config: GameConfig, state, mode: Mode = Mode.RAW) -> np.ndarray:
    require_valid(config)
    q = naive_map(as_state(config, state), config.a, config.c, config.scale)
    if Mode(mode) is Mode.CLIPPED:
        q = np.maximum(q, 0.0)
    return q


@dataclass(frozen=True)
class Trajectory:
    states: np.ndarray  # (steps + 1, N, M)
    classification: Classification
    mode: Mode
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    def distance_to(self, target) -> float:
        """Max-norm distance between the last state and ``target``."""
        return float(np.max(np.abs(self.final - np.asarray(target))))


def classify_states(states: np.ndarray, diverged: bool) -> Classification:
    if diverged:
        return Classification.DIVERGENT
    if np.all(states >= 0):
        return Classification.FEASIBLE
    return Classification.ADMISSIBLE_ONLY


def iterate(update, initial: np.ndarray, steps: int, mode: Mode) -> Trajectory:
    """Run ``update`` from ``initial`` with clipping and the divergence guard."""
    if steps < 1:
        raise ValueError("T must be >= 1")
    mode = Mode(mode)
    states = [initial]
    q = initial
    diverged = False
    for _ in range(steps):
        q = update(q)
        if mode is Mode.CLIPPED:
            q = np.maximum(q, 0.0)
        states.append(q)
        if not np.all(np.isfinite(q)) or np.max(np.abs(q)) > DIVERGENCE_THRESHOLD:
            diverged = True
            break
    states = np.array(states)
    return Trajectory(states, classify_states(states, diverged), mode)


def default_initial_state(config: GameConfig) -> np.ndarray:
    """Each firm's best response to empty markets, split evenly across N firms."""
    require_valid(config)
    a, c = config.a, config.c
    return (a[None, :] - c[:, None]) / (2 * (1 + config.scale) * config.n_firms)


def simulate(config: GameConfig, initial=None, steps: int = 100, mode: Mode = Mode.RAW) -> Trajectory:
    require_valid(config)
    q0 = default_initial_state(config) if initial is None else as_state(config, initial)
    a, c, d = config.a, config.c, config.scale
    return iterate(lambda q: naive_map(q, a, c, d), q0, steps, mode)


def singular_scales(n_markets: int, n_firms: int = 2) -> tuple[float, float]:
    """Scale values at which the first-order system has no unique solution."""
    return (-(n_firms + 1) / (2 * n_markets), -1 / (2 * n_markets))


def is_equilibrium_singular(config: GameConfig, tol: float = 1e-12) -> bool:
    return any(abs(config.scale - s) <= tol for s in singular_scales(config.n_markets, config.n_firms))


def nash_duopoly_closed_form(config: GameConfig) -> np.ndarray:
    """Interior Cournot-Nash point of the two-firm game in closed form."""
    if config.n_firms != 2:
        raise ShapeError(f"closed form needs exactly 2 firms, got {config.n_firms}")
    require_valid(config)
    m, d = config.n_markets, config.scale
    if is_equilibrium_singular(config):
        raise SingularParameterError(f"no unique equilibrium at d={d!r} with M={m}")
    denom = (2 * m * d + 1) * (2 * m * d + 3)
    a, c = config.a, config.c
    a_bar = a.mean()
    rival = c[::-1]
    first = ((a[None, :] - c[:, None]) * (1 + 2 * m * d) + (rival - c)[:, None]) / denom
    second = (2 / 3) * m * (a - a_bar) * (2 * m * d**2 + d) / denom
    return first + second[None, :]


def foc_system(config: GameConfig) -> tuple[np.ndarray, np.ndarray]:
    """Matrix and right-hand side of the first-order conditions, firm-major.

    Row (i, j) encodes a_j - Q_j - q_j^i - c_i - 2 d Q^i = 0.
    """
    n, m, d = config.n_firms, config.n_markets, config.scale
    matrix = np.eye(n * m) + np.kron(np.ones((n, n)), np.eye(m)) + 2 * d * np.kron(np.eye(n), np.ones((m, m)))
    rhs = (config.a[None, :] - config.c[:, None]).ravel()
    return matrix, rhs


def nash_linear_solve(config: GameConfig) -> np.ndarray:
    require_valid(config)
    matrix, rhs = foc_system(config)
    try:
        x = solve_linear(matrix, rhs)
    except SingularMatrixError as err:
        raise SingularParameterError(f"first-order system is singular at d={config.scale!r}") from err
    return x.reshape(config.shape)


def nash_equilibrium(config: GameConfig) -> np.ndarray:
    """Closed form for duopolies, linear solve otherwise."""
    if config.n_firms == 2:
        return nash_duopoly_closed_form(config)
    return nash_linear_solve(config)
