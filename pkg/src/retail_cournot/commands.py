"""The work behind each CLI subcommand, callable without argparse."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import artifacts
from .artifacts import RunArtifacts, fmt, write_csv
from .baseline import BaselineConfig, fisher_trajectory
from .dynamics import DIVERGENT, bifurcation_scan, classify_stability, stability_interval, stability_zone_scan
from .model import Mode, nash_equilibrium, profit, simulate
from .scenario import Scenario

DEFAULT_STEPS = 100
DEFAULT_POINTS = 1000
DEFAULT_TRANSIENT = 1000
DEFAULT_SAMPLES = 200
MAX_ZONE_MARKETS = 1000


def _pick(*values):
    return next(v for v in values if v is not None)


def _run(command: str, out_dir, scenario: Scenario | None, **options) -> RunArtifacts:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    inputs = {"command": command, **options}
    if scenario is not None:
        cfg = scenario.config
        inputs["config"] = {"a": list(cfg.market_intercepts), "c": list(cfg.firm_costs), "d": cfg.scale}
        if scenario.options.initial is not None:
            inputs["initial"] = scenario.options.initial.tolist()
    return RunArtifacts(out, command, inputs)


def _equilibrium_rows(q: np.ndarray):
    n, m = q.shape
    return [(i + 1, j + 1, q[i, j]) for i in range(n) for j in range(m)]


def _state_rows(step: int, q: np.ndarray, *prefix):
    n, m = q.shape
    return [(step, *prefix, i + 1, j + 1, q[i, j]) for i in range(n) for j in range(m)]


def cmd_simulate(scenario: Scenario, steps=None, mode=None, out_dir=".", svg=False) -> RunArtifacts:
    steps = _pick(steps, scenario.options.steps, DEFAULT_STEPS)
    if steps < 1:
        raise ValueError("T must be >= 1")
    mode = Mode(_pick(mode, scenario.options.mode, Mode.RAW))
    run = _run("simulate", out_dir, scenario, steps=steps, mode=mode.value)

    config = scenario.config
    equilibrium = nash_equilibrium(config)
    traj = simulate(config, scenario.options.initial, steps, mode)
    rows = [row for t, q in enumerate(traj.states) for row in _state_rows(t, q)]
    run.add(write_csv(run.path("trajectory.csv"), "step,firm,market,quantity", rows))
    run.add(write_csv(run.path("equilibrium.csv"), "firm,market,quantity", _equilibrium_rows(equilibrium)))
    if svg:
        run.add(artifacts.plot_trajectory(run.path("trajectory.svg"), traj.states, equilibrium))
    run.write_manifest()
    run.summary = (
        f"{traj.classification.value}, steps={traj.steps}, "
        f"distance_to_equilibrium={traj.distance_to(equilibrium):.6g}"
    )
    return run


def cmd_equilibrium(scenario: Scenario, out_dir=".") -> RunArtifacts:
    run = _run("equilibrium", out_dir, scenario)
    config = scenario.config
    q = nash_equilibrium(config)
    run.add(write_csv(run.path("equilibrium.csv"), "firm,market,quantity", _equilibrium_rows(q)))
    run.write_manifest()
    lines = []
    for i in range(config.n_firms):
        quantities = ", ".join(f"{x:.6g}" for x in q[i])
        lines.append(f"firm {i + 1}: q=({quantities}), profit={profit(config, q, i):.6g}")
    run.summary = "\n".join(lines)
    return run


def cmd_compare(scenario: Scenario, steps=None, out_dir=".", mode=None, svg=False) -> RunArtifacts:
    """Retail model against M independent single-market games with the same a_j, c_i, d."""
    steps = _pick(steps, scenario.options.steps, DEFAULT_STEPS)
    if steps < 1:
        raise ValueError("T must be >= 1")
    mode = Mode(_pick(mode, scenario.options.mode, Mode.RAW))
    run = _run("compare", out_dir, scenario, steps=steps, mode=mode.value)

    config = scenario.config
    initial = scenario.options.initial
    retail = simulate(config, initial, steps, mode)
    fisher = []
    for j, a in enumerate(config.market_intercepts):
        baseline = BaselineConfig(a, config.firm_costs, config.scale)
        start = None if initial is None else initial[:, j]
        fisher.append(fisher_trajectory(baseline, start, steps, mode))

    rows = []
    for t in range(steps + 1):
        if t < len(retail.states):
            rows.extend(_state_rows(t, retail.states[t], "retail"))
        for j, traj in enumerate(fisher):
            if t < len(traj.states):
                rows.extend((t, "fisher", i + 1, j + 1, q) for i, q in enumerate(traj.states[t]))
    rows.sort(key=lambda r: (r[0], r[1] != "retail", r[2], r[3]))
    run.add(write_csv(run.path("compare.csv"), "step,model,firm,market,quantity", rows))
    if svg:
        run.add(artifacts.plot_compare(run.path("compare.svg"), retail.states, [f.states for f in fisher]))
    run.write_manifest()
    run.summary = f"retail: {retail.classification.value}; fisher: " + ", ".join(
        f.classification.value for f in fisher
    )
    return run


def cmd_stability(scenario: Scenario, out_dir=".") -> RunArtifacts:
    run = _run("stability", out_dir, scenario)
    config = scenario.config
    report = classify_stability(config)
    interval = stability_interval(config.n_markets)
    rows = [(k + 1, lam) for k, lam in enumerate(report.eigenvalues)]
    run.add(write_csv(run.path("eigen.csv"), "index,lambda", rows))
    run.write_manifest()
    run.summary = (
        f"{report.stability_class.value}, rho={report.spectral_radius:.6g}, "
        f"interval=({interval.d_lower:.6g}, {interval.d_upper:.6g})"
    )
    run.result = report
    return run


def cmd_bifurcate(
    scenario: Scenario,
    d_lo: float,
    d_hi: float,
    n_points=None,
    transient=None,
    samples=None,
    out_dir=".",
    mode=None,
    svg=False,
) -> RunArtifacts:
    n_points = _pick(n_points, DEFAULT_POINTS)
    transient = _pick(transient, scenario.options.transient, DEFAULT_TRANSIENT)
    samples = _pick(samples, scenario.options.samples, DEFAULT_SAMPLES)
    mode = Mode(_pick(mode, scenario.options.mode, Mode.CLIPPED))
    if not d_lo < d_hi:
        raise ValueError("the d range must have positive width (d_lo < d_hi)")
    run = _run(
        "bifurcate", out_dir, scenario,
        d_lo=d_lo, d_hi=d_hi, n_points=n_points, transient=transient, samples=samples, mode=mode.value,
    )
    data = bifurcation_scan(
        scenario.config, d_lo, d_hi, n_points, transient, samples, mode, scenario.options.initial
    )

    lines = ["d,firm,market,quantity"]
    for d, i, j, values in data.rows():
        prefix = f"{fmt(d)},{i + 1},{j + 1},"
        if np.all(np.isnan(values)):
            lines.append(prefix + DIVERGENT)
        else:
            lines.extend(prefix + format(v, ".17g") for v in values.tolist())
    path = run.path("bifurcation.csv")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    run.add(path)
    if svg:
        run.add(artifacts.plot_bifurcation(run.path("bifurcation.svg"), data.d_values, data.samples[:, :, 0, 0]))
    run.write_manifest()
    run.result = data
    run.summary = f"{n_points} values of d in [{d_lo:g}, {d_hi:g}], {int(data.diverged().sum())} divergent"
    return run


def cmd_zone(m_min: int, m_max: int, out_dir=".", svg=False) -> RunArtifacts:
    if not 1 <= m_min <= m_max <= MAX_ZONE_MARKETS:
        raise ValueError(f"need 1 <= m_min <= m_max <= {MAX_ZONE_MARKETS}")
    run = _run("zone", out_dir, None, m_min=m_min, m_max=m_max)
    rows = stability_zone_scan(m_min, m_max)
    run.add(write_csv(run.path("zone.csv"), "m,d_lower,d_upper", [(r.markets, r.d_lower, r.d_upper) for r in rows]))
    if svg:
        run.add(artifacts.plot_zone(run.path("zone.svg"), rows))
    run.write_manifest()
    run.summary = f"{len(rows)} rows"
    return run
