"""Single-market reference models: linear-cost Cournot and its quadratic-cost extension.

With one market the multi-market game collapses onto these, which makes
them both a comparison point and an independent check of the general code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularParameterError, ValidationError
from .model import (
    Mode,
    StabilityClass,
    Trajectory,
    ValidationReport,
    iterate,
)


@dataclass(frozen=True)
class BaselineConfig:
    intercept: float
    firm_costs: tuple[float, ...]
    scale: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "intercept", float(self.intercept))
        object.__setattr__(self, "firm_costs", tuple(float(x) for x in self.firm_costs))
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def n_firms(self) -> int:
        return len(self.firm_costs)


@dataclass(frozen=True)
class BaselineEquilibrium:
    quantities: np.ndarray
    stability: StabilityClass


def _check(baseline: BaselineConfig) -> None:
    hard = []
    c = np.array(baseline.firm_costs)
    if c.size == 0:
        hard.append("no-firms")
    if np.any(c <= 0):
        hard.append("cost-nonpositive")
    if baseline.intercept <= 0:
        hard.append("intercept-nonpositive")
    if c.size and baseline.intercept < c.max():
        hard.append("intercept-below-cost")
    if not baseline.scale > -1:
        hard.append("second-order-condition")
    if hard:
        raise ValidationError(ValidationReport(tuple(hard)))


def baseline_theocharis(baseline: BaselineConfig) -> BaselineEquilibrium:
    """Linear-cost equilibrium; stable for at most two firms."""
    if baseline.scale != 0:
        raise ValueError("the linear-cost model requires d = 0")
    _check(baseline)
    n = baseline.n_firms
    c = np.array(baseline.firm_costs)
    q = (baseline.intercept - c + n * (c.mean() - c)) / (n + 1)
    if n <= 2:
        stability = StabilityClass.STABLE
    elif n == 3:
        stability = StabilityClass.NEUTRAL
    else:
        stability = StabilityClass.UNSTABLE
    return BaselineEquilibrium(q, stability)


def baseline_fisher(baseline: BaselineConfig) -> BaselineEquilibrium:
    """Quadratic-cost equilibrium; stable iff (N - 3)/2 < d."""
    _check(baseline)
    d = baseline.scale
    if not d > -0.5:
        raise ValidationError(ValidationReport(("scale-below-admissible",)))
    n = baseline.n_firms
    c = np.array(baseline.firm_costs)
    denom = 4 * d**2 + 2 * (n + 2) * d + n + 1
    if denom == 0:
        raise SingularParameterError(f"no unique equilibrium at d={d!r} with N={n}")
    q = ((baseline.intercept - c) * (1 + 2 * d) + n * (c.mean() - c)) / denom
    threshold = (n - 3) / 2
    if d > threshold:
        stability = StabilityClass.STABLE
    elif d == threshold:
        stability = StabilityClass.NEUTRAL
    else:
        stability = StabilityClass.UNSTABLE
    return BaselineEquilibrium(q, stability)


def fisher_default_initial(baseline: BaselineConfig) -> np.ndarray:
    c = np.array(baseline.firm_costs)
    return (baseline.intercept - c) / (2 * (1 + baseline.scale) * baseline.n_firms)


def fisher_trajectory(
    baseline: BaselineConfig, initial=None, steps: int = 100, mode: Mode = Mode.RAW
) -> Trajectory:
    """Naive best-response dynamics of the single-market quadratic-cost game.

    States have shape (N,). Same clipping and divergence rules as the
    multi-market simulation.
    """
    d = baseline.scale
    if d == -1:
        raise SingularParameterError("d = -1 makes the best response undefined")
    _check(baseline)
    a = baseline.intercept
    c = np.array(baseline.firm_costs)
    q0 = fisher_default_initial(baseline) if initial is None else np.array(initial, dtype=float)
    if q0.shape != c.shape:
        raise ValueError(f"initial state has shape {q0.shape}, expected {c.shape}")

    def update(q):
        return (a - (q.sum() - q) - c) / (2 * (1 + d))

    return iterate(update, q0, steps, mode)
