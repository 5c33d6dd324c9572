"""Figure rendering: line figures for sweeps, heatmap grids for phase scans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import SchemaError, Table, load_table

# fixed color range so the 1/2 and 1 plateaus are distinguishable across panels
HEATMAP_RANGE = (0.0, 1.1)

_DEFAULT_LINE_COLUMNS = ("mutual_info", "logneg_upper", "n_soft_mode")


@dataclass(frozen=True)
class PlotSpec:
    """One figure: input CSVs, plot kind, column mapping, output image path."""

    inputs: Tuple[str, ...]
    kind: str  # "lines" | "heatmap"
    out: str  # .png or .svg
    x: str = "mu_f"
    y: Tuple[str, ...] = ()  # lines: one subplot row per column
    value: str = "c_eff"  # heatmap cell value
    titles: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lines", "heatmap"):
            raise SchemaError(f"kind must be 'lines' or 'heatmap', got {self.kind!r}")
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")
        if not (self.out.endswith(".png") or self.out.endswith(".svg")):
            raise SchemaError(f"output must be .png or .svg, got {self.out!r}")


def pivot_grid(table: Table, value: str):
    """(mu values, delta values, 2D value array) from a phase-plot table.

    Cells whose value is empty (per-cell errors) become NaN.
    """
    if table.schema != "phase-plot":
        raise SchemaError(f"heatmaps need a phase-plot file, got {table.schema!r}")
    mus = sorted({float(v) for v in table.column("mu_f")})
    deltas = sorted({float(v) for v in table.column("delta_f")})
    grid = np.full((len(mus), len(deltas)), np.nan)
    mu_idx = {v: i for i, v in enumerate(mus)}
    d_idx = {v: i for i, v in enumerate(deltas)}
    for row in table.rows:
        v = row[value]
        grid[mu_idx[float(row["mu_f"])], d_idx[float(row["delta_f"])]] = (
            float(v) if v != "" else np.nan
        )
    return np.array(mus), np.array(deltas), grid


def _panel_title(table: Table, given: Optional[str]) -> str:
    if given:
        return given
    alpha = table.config.get("alpha")
    return f"alpha = {alpha}" if alpha is not None else ""


def _render_lines(spec: PlotSpec, tables) -> plt.Figure:
    y_cols = spec.y or tuple(
        c for c in _DEFAULT_LINE_COLUMNS if all(c in t.columns for t in tables)
    )
    if not y_cols:
        raise SchemaError("no line columns resolved; pass an explicit column list")
    fig, axes = plt.subplots(
        len(y_cols), len(tables),
        figsize=(3.2 * len(tables), 2.2 * len(y_cols)),
        sharex="col", squeeze=False,
    )
    for j, table in enumerate(tables):
        x = table.floats(spec.x)
        for i, col in enumerate(y_cols):
            ax = axes[i][j]
            ax.plot(x, table.floats(col), marker="o", markersize=3)
            if i == 0:
                ax.set_title(_panel_title(table, spec.titles[j] if j < len(spec.titles) else None))
            if j == 0:
                ax.set_ylabel(col)
            if i == len(y_cols) - 1:
                ax.set_xlabel(spec.x)
    fig.tight_layout()
    return fig


def _render_heatmap(spec: PlotSpec, tables) -> plt.Figure:
    ncols = min(3, len(tables))
    nrows = -(-len(tables) // ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.4 * ncols, 2.8 * nrows), squeeze=False
    )
    vmin, vmax = HEATMAP_RANGE
    im = None
    for idx, table in enumerate(tables):
        ax = axes[idx // ncols][idx % ncols]
        mus, deltas, grid = pivot_grid(table, spec.value)
        im = ax.pcolormesh(deltas, mus, grid, vmin=vmin, vmax=vmax, shading="nearest")
        ax.set_xlabel("delta_f")
        ax.set_ylabel("mu_f")
        ax.set_title(_panel_title(table, spec.titles[idx] if idx < len(spec.titles) else None))
    for idx in range(len(tables), nrows * ncols):
        axes[idx // ncols][idx % ncols].axis("off")
    fig.colorbar(im, ax=[a for row in axes for a in row], label=spec.value)
    return fig


def render(spec: PlotSpec) -> str:
    """Render the figure described by the spec and return the output path."""
    tables = [load_table(p) for p in spec.inputs]
    if spec.kind == "lines":
        fig = _render_lines(spec, tables)
    else:
        fig = _render_heatmap(spec, tables)
    fig.savefig(spec.out, dpi=150)
    plt.close(fig)
    return spec.out
