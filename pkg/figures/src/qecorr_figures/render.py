"""Render the two figure kinds from qecorr CSV files.

``fig1``: inter-qubit entanglement over one full cycle, one curve per
initial environment weight, styled to the usual legend (0.5 solid
black, 0.7 dashed red, 0.9 dotted orange) with the midcycle marked.

``timeline``: qubit coherence over time above three boolean verdict
strips (separable, environment-side zero discord, qubit-side zero
discord) sharing the time axis.

Figures are built on explicit ``matplotlib.figure.Figure`` objects, so
no interactive backend is ever touched; the output format follows the
file extension and falls back to PDF (vector) when there is none.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure

FIG1_COLUMNS = ("c0", "t_normalized", "concurrence")
TIMELINE_COLUMNS = (
    "t",
    "coherence",
    "separable",
    "env_zero_discord",
    "qubit_zero_discord",
)

FIG1_STYLES = {
    0.5: {"color": "black", "linestyle": "solid"},
    0.7: {"color": "tab:red", "linestyle": "dashed"},
    0.9: {"color": "tab:orange", "linestyle": "dotted"},
}
_FALLBACK_STYLES = ({"linestyle": "dashdot"}, {"linestyle": (0, (3, 1, 1, 1))})

VERDICT_STRIPS = ("separable", "env_zero_discord", "qubit_zero_discord")
_STRIP_LABELS = ("separable", "env zero discord", "qubit zero discord")


@dataclass
class FigureSpec:
    input_csv: Path
    output: Path
    kind: str = "fig1"
    labels: bool = True
    styles: dict = field(default_factory=lambda: dict(FIG1_STYLES))

    def __post_init__(self):
        self.input_csv = Path(self.input_csv)
        self.output = Path(self.output)
        if self.kind not in ("fig1", "timeline"):
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not self.output.suffix:
            self.output = self.output.with_suffix(".pdf")


def load_rows(path: Path, required: tuple[str, ...]) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, no CSV header")
        for column in required:
            if column not in reader.fieldnames:
                raise ValueError(f"{path}: missing required column {column!r}")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def _save(fig: Figure, output: Path) -> None:
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output)


def render_fig1(spec: FigureSpec) -> Figure:
    """One axes of concurrence cycles, one curve per distinct c0."""
    rows = load_rows(spec.input_csv, FIG1_COLUMNS)
    groups: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        groups.setdefault(row["c0"], []).append(
            (float(row["t_normalized"]), float(row["concurrence"]))
        )

    fig = Figure(figsize=(5.0, 3.4))
    ax = fig.subplots()
    fallback = iter(_FALLBACK_STYLES)
    for key, points in groups.items():
        c0 = float(key)
        style = spec.styles.get(round(c0, 6))
        if style is None:
            style = next(fallback, {"linestyle": "solid"})
        x = np.array([p[0] for p in points])
        y = np.array([p[1] for p in points])
        ax.plot(x, y, label=f"$c_0$ = {c0:g}", **style)
    ax.axvline(0.5, color="0.6", linewidth=0.8, zorder=0)
    ax.annotate("$t_q$", xy=(0.5, 0.0), xytext=(0.51, 0.03), fontsize=10)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(-0.02, 1.05)
    if spec.labels:
        ax.set_xlabel("t / period")
        ax.set_ylabel("concurrence")
        ax.legend(loc="lower right", frameon=False)
    _save(fig, spec.output)
    return fig


def render_timeline(spec: FigureSpec) -> Figure:
    """Coherence curve over three shared-axis boolean verdict strips."""
    rows = load_rows(spec.input_csv, TIMELINE_COLUMNS)
    t = np.array([float(row["t"]) for row in rows])
    coherence = np.array([float(row["coherence"]) for row in rows])
    flags = np.array(
        [[row[name] == "true" for row in rows] for name in VERDICT_STRIPS],
        dtype=float,
    )

    fig = Figure(figsize=(6.0, 4.0))
    ax_top, ax_strips = fig.subplots(
        2, 1, sharex=True, height_ratios=(2.4, 1.0), gridspec_kw={"hspace": 0.12}
    )
    ax_top.plot(t, coherence, color="tab:blue")
    ax_top.set_ylabel("coherence")
    ax_top.set_ylim(bottom=-0.01)

    span = (t[-1] - t[0]) or 1.0
    ax_strips.imshow(
        flags,
        aspect="auto",
        interpolation="nearest",
        origin="lower",
        extent=(t[0] - span / (2 * max(len(rows) - 1, 1)),
                t[-1] + span / (2 * max(len(rows) - 1, 1)),
                -0.5, 2.5),
        cmap=ListedColormap(["#c44e52", "#55a868"]),
        vmin=0.0,
        vmax=1.0,
    )
    ax_strips.set_yticks(range(len(_STRIP_LABELS)), _STRIP_LABELS, fontsize=8)
    ax_strips.set_xlabel("t")
    ax_strips.set_xlim(t[0], t[-1])
    _save(fig, spec.output)
    return fig


RENDERERS = {"fig1": render_fig1, "timeline": render_timeline}
