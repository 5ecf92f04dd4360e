"""CSV, manifest and SVG emission for CLI runs.

CSV is the contract: fixed headers, long format, floats written with 17
significant digits so values round-trip exactly. Plots are convenience only.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MANIFEST = "manifest.json"


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(path: Path, header: str, rows) -> Path:
    lines = [header]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_csv(path: Path) -> list[dict[str, str]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    keys = lines[0].split(",")
    return [dict(zip(keys, line.split(","))) for line in lines[1:]]


def sha256_file(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def inputs_hash(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class RunArtifacts:
    out_dir: Path
    command: str
    inputs: dict
    files: list[Path] = field(default_factory=list)
    summary: str = ""
    result: object = None

    def add(self, path: Path) -> Path:
        self.files.append(path)
        return path

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def write_manifest(self) -> Path:
        digest = inputs_hash(self.inputs)
        manifest = {
            "command": self.command,
            "inputs": self.inputs,
            "input_sha256": digest,
            "files": [
                {"name": p.name, "sha256": sha256_file(p), "input_sha256": digest}
                for p in self.files
            ],
        }
        target = self.out_dir / MANIFEST
        target.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
        return target


def _pyplot():
    try:
        import matplotlib
    except ImportError as err:
        raise ImportError("--svg needs matplotlib: pip install 'artifact[plot]'") from err

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "retail-cournot"
    return plt


def _save(fig, path: Path) -> Path:
    import matplotlib.pyplot as plt

    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_trajectory(path: Path, states: np.ndarray, equilibrium: np.ndarray | None) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 4.5))
    t = np.arange(len(states))
    n, m = states.shape[1:]
    for i in range(n):
        for j in range(m):
            line, = ax.plot(t, states[:, i, j], lw=1.2 if (i, j) == (0, 0) else 0.6,
                            label=f"firm {i + 1}, market {j + 1}")
            if equilibrium is not None:
                ax.axhline(equilibrium[i, j], color=line.get_color(), ls=":", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("quantity")
    ax.legend(fontsize="x-small", ncol=max(1, m))
    return _save(fig, path)


def plot_compare(path: Path, retail: np.ndarray, fisher: list[np.ndarray]) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(np.arange(len(retail)), retail[:, 0, 0], color="tab:blue", label="retail q[1,1]")
    ax.plot(np.arange(len(fisher[0])), fisher[0][:, 0], color="tab:red", label="single-market q[1,1]")
    ax.set_xlabel("t")
    ax.set_ylabel("quantity")
    ax.legend()
    return _save(fig, path)


def plot_bifurcation(path: Path, d_values: np.ndarray, samples: np.ndarray) -> Path:
    """Scatter of firm 1's market-1 samples against d."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 4.5))
    xs, ys = [], []
    for d, values in zip(d_values, samples):
        values = np.unique(np.round(values[np.isfinite(values)], 6))
        xs.append(np.full(values.shape, d))
        ys.append(values)
    ax.plot(np.concatenate(xs), np.concatenate(ys), ",", color="tab:blue")
    ax.set_xlabel("d")
    ax.set_ylabel("q[1,1]")
    return _save(fig, path)


def plot_zone(path: Path, rows) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ms = [r.markets for r in rows]
    lower = [r.d_lower for r in rows]
    finite_upper = [r.d_upper for r in rows if np.isfinite(r.d_upper)]
    ceiling = max(finite_upper + [0.5]) * 1.2
    upper = [r.d_upper if np.isfinite(r.d_upper) else ceiling for r in rows]
    ax.plot(ms, lower, "o-", color="tab:blue", ms=3)
    ax.plot(ms, upper, "o-", color="tab:blue", ms=3)
    ax.fill_between(ms, lower, upper, color="tab:blue", alpha=0.15)
    ax.set_xlabel("markets m")
    ax.set_ylabel("d")
    return _save(fig, path)
