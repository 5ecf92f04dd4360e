"""Local stability of the equilibrium and parameter scans of the naive map.

The map is affine, so its Jacobian is the same everywhere. For N firms and
M markets it has M x M diagonal blocks with zero diagonal and -d/(1+d)
elsewhere, and off-diagonal blocks -1/(2(1+d)) I. For two firms the
spectrum is known in closed form, which gives an independent check on the
numeric eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularParameterError
from .model import (
    DIVERGENCE_THRESHOLD,
    GameConfig,
    Mode,
    StabilityClass,
    as_state,
    is_equilibrium_singular,
    naive_map,
    require_valid,
)
from .numerics import symmetric_eigenvalues

NEUTRAL_TOLERANCE = 1e-9


def _check_scale(d: float) -> None:
    if d == -1:
        raise SingularParameterError("d = -1 makes the Jacobian undefined")


def build_jacobian(config: GameConfig) -> np.ndarray:
    require_valid(config)
    n, m, d = config.n_firms, config.n_markets, config.scale
    own = -d / (1 + d) * (np.ones((m, m)) - np.eye(m))
    cross = -1 / (2 * (1 + d)) * np.eye(m)
    return np.kron(np.eye(n), own) + np.kron(np.ones((n, n)) - np.eye(n), cross)


def eigenvalues_closed_form(m: int, d: float) -> np.ndarray:
    """Duopoly spectrum as an ascending array with multiplicities expanded."""
    if m < 1:
        raise ValueError("market count must be >= 1")
    _check_scale(d)
    two = 2 * (1 + d)
    values = [-(2 * (m - 1) * d + 1) / two, -(2 * (m - 1) * d - 1) / two]
    values += [(2 * d + 1) / two] * (m - 1)
    values += [(2 * d - 1) / two] * (m - 1)
    return np.sort(np.array(values))


def characteristic_product(lam: float, m: int, d: float) -> float:
    """The duopoly characteristic polynomial in factored form, evaluated at ``lam``."""
    _check_scale(d)
    half = 0.5 / (1 + d)
    return (
        (lam - half * (2 * d + 1)) ** (m - 1)
        * (lam - half * (2 * d - 1)) ** (m - 1)
        * (lam + half * (2 * (m - 1) * d + 1))
        * (lam + half * (2 * (m - 1) * d - 1))
    )


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    spectral_radius: float
    stability_class: StabilityClass
    tolerance: float
    closed_form: bool


def classify_radius(rho: float, tol: float = NEUTRAL_TOLERANCE) -> StabilityClass:
    if rho < 1 - tol:
        return StabilityClass.STABLE
    if rho > 1 + tol:
        return StabilityClass.UNSTABLE
    return StabilityClass.NEUTRAL


def classify_stability(config: GameConfig, tol: float = NEUTRAL_TOLERANCE) -> SpectrumReport:
    require_valid(config)
    if config.n_firms == 2:
        eigenvalues = eigenvalues_closed_form(config.n_markets, config.scale)
    else:
        eigenvalues = symmetric_eigenvalues(build_jacobian(config)).eigenvalues
    rho = float(np.max(np.abs(eigenvalues)))
    return SpectrumReport(eigenvalues, rho, classify_radius(rho, tol), tol, config.n_firms == 2)


@dataclass(frozen=True)
class StabilityInterval:
    markets: int
    d_lower: float
    d_upper: float

    def __contains__(self, d: float) -> bool:
        return self.d_lower < d < self.d_upper


def stability_interval(m: int) -> StabilityInterval:
    """Open range of d with a locally stable duopoly equilibrium.

    With one market only the two firm-level eigenvalues survive and the
    bound is d > -1/2; the general three-or-more formula does not apply.
    """
    if m < 1:
        raise ValueError("market count must be >= 1")
    if m == 1:
        return StabilityInterval(1, -0.5, math.inf)
    if m == 2:
        return StabilityInterval(2, -0.25, math.inf)
    return StabilityInterval(m, -1 / (2 * m), 1 / (2 * (m - 2)))


def stability_zone_scan(m_min: int, m_max: int) -> list[StabilityInterval]:
    if not 1 <= m_min <= m_max:
        raise ValueError("need 1 <= m_min <= m_max")
    return [stability_interval(m) for m in range(m_min, m_max + 1)]


DIVERGENT = "divergent"
SINGULAR_EQUILIBRIUM = "singular-equilibrium"


@dataclass(frozen=True)
class BifurcationData:
    """Post-transient samples on a grid of scale values.

    ``samples`` has shape (n_points, samples, N, M); rows of divergent orbits
    are NaN and carry the ``divergent`` flag.
    """

    d_values: np.ndarray
    samples: np.ndarray
    flags: tuple[frozenset, ...]
    metadata: dict = field(default_factory=dict)

    def spread(self) -> np.ndarray:
        """Peak-to-peak range of each (d, firm, market) sample set."""
        return np.ptp(self.samples, axis=1)

    def diverged(self) -> np.ndarray:
        return np.array([DIVERGENT in f for f in self.flags])

    def rows(self):
        """Yield (d, firm, market, values) in grid order, firms and markets 0-based."""
        _, _, n, m = self.samples.shape
        for k, d in enumerate(self.d_values):
            for i in range(n):
                for j in range(m):
                    yield float(d), i, j, self.samples[k, :, i, j]


def bifurcation_scan(
    config: GameConfig,
    d_lo: float,
    d_hi: float,
    n_points: int = 1000,
    transient: int = 1000,
    samples: int = 200,
    mode: Mode = Mode.CLIPPED,
    initial=None,
) -> BifurcationData:
    """Iterate the map for every d on an even grid and keep the tail.

    All grid points advance together as one batched array; each cell is
    still an independent orbit, so the result does not depend on the grid
    it sits in. ``initial`` defaults to the per-d default initial state.
    """
    if not d_lo < d_hi:
        raise ValueError("d_lo must be below d_hi")
    if n_points < 2 or transient < 0 or samples < 1:
        raise ValueError("need n_points >= 2, transient >= 0, samples >= 1")
    if d_lo <= -1:
        raise ValueError("every scanned d must exceed -1")
    require_valid(config.with_scale(d_hi))
    mode = Mode(mode)

    d_values = np.linspace(d_lo, d_hi, n_points)
    d = d_values[:, None, None]
    a, c = config.a, config.c
    if initial is None:
        q = (a[None, None, :] - c[None, :, None]) / (2 * (1 + d) * config.n_firms)
    else:
        q = np.broadcast_to(as_state(config, initial), (n_points, *config.shape)).copy()

    out = np.empty((n_points, samples, *config.shape))
    diverged = np.zeros(n_points, dtype=bool)
    for t in range(transient + samples):
        q = naive_map(q, a, c, d)
        if mode is Mode.CLIPPED:
            q = np.maximum(q, 0.0)
        with np.errstate(invalid="ignore"):
            blown = ~np.all(np.isfinite(q) & (np.abs(q) <= DIVERGENCE_THRESHOLD), axis=(1, 2))
        if np.any(blown & ~diverged):
            diverged |= blown
            q[diverged] = np.nan
        if t >= transient:
            out[:, t - transient] = q
    out[diverged] = np.nan

    flags = []
    for k, dk in enumerate(d_values):
        f = set()
        if diverged[k]:
            f.add(DIVERGENT)
        if is_equilibrium_singular(config.with_scale(float(dk))):
            f.add(SINGULAR_EQUILIBRIUM)
        flags.append(frozenset(f))
    metadata = {
        "d_lo": float(d_lo),
        "d_hi": float(d_hi),
        "n_points": int(n_points),
        "transient": int(transient),
        "samples": int(samples),
        "mode": mode.value,
        "initial": "default" if initial is None else np.asarray(initial, dtype=float).tolist(),
    }
    return BifurcationData(d_values, out, tuple(flags), metadata)
