"""Render sweep data into the figure layouts of the four presets.

fig2/fig4 are two-panel correlation figures, panel (a) quantum discord and
panel (b) concurrence; fig3/fig5 are single-panel entropic-uncertainty-bound
figures.  One curve per detuning value, styled by a fixed palette keyed by the
detuning's index in the file, so output is deterministic for a given input and
dpi.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .reader import SweepData, read_sweep_csv

# quantity panels per figure: (column, panel tag)
FIGURE_PANELS = {
    "fig2": (("discord", "(a)"), ("concurrence", "(b)")),
    "fig3": (("eub", ""),),
    "fig4": (("discord", "(a)"), ("concurrence", "(b)")),
    "fig5": (("eub", ""),),
}

AXIS_LABELS = {
    "discord": "quantum discord",
    "concurrence": "concurrence",
    "eub": "entropic uncertainty bound",
}

# one style per detuning index
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
LINE_STYLES = ("-", "--", "-.", ":", "-", "--", "-.", ":")


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    figure_name: str
    output_path: str
    dpi: int = 200


def plotted_arrays(data: SweepData, figure_name: str) -> dict:
    """Exactly the arrays that render() draws, for the debug dump."""
    panels = FIGURE_PANELS[figure_name]
    out = {"gamma_t": {}, **{column: {} for column, _ in panels}}
    for delta in data.deltas:
        key = repr(delta)
        out["gamma_t"][key] = data.column(delta, "gamma_t")
        for column, _ in panels:
            out[column][key] = data.column(delta, column)
    return out


def render(spec: FigureSpec, dump_path: str | None = None):
    """Draw the figure and write it to spec.output_path; returns the Figure."""
    if spec.figure_name not in FIGURE_PANELS:
        raise ValueError(f"unknown figure {spec.figure_name!r}; choose from {sorted(FIGURE_PANELS)}")
    data = read_sweep_csv(spec.input_csv)
    if dump_path:
        with open(dump_path, "w", encoding="utf-8") as fh:
            json.dump(plotted_arrays(data, spec.figure_name), fh, indent=1)
            fh.write("\n")
    panels = FIGURE_PANELS[spec.figure_name]
    fig, axes = plt.subplots(1, len(panels), figsize=(6.0 * len(panels), 4.2))
    if len(panels) == 1:
        axes = [axes]
    for ax, (column, tag) in zip(axes, panels):
        for idx, delta in enumerate(data.deltas):
            ax.plot(
                data.column(delta, "gamma_t"),
                data.column(delta, column),
                color=PALETTE[idx % len(PALETTE)],
                linestyle=LINE_STYLES[idx % len(LINE_STYLES)],
                linewidth=1.6,
                label=f"$\\delta = {delta:g}\\gamma$",
            )
        ax.set_xlabel(r"$\gamma t$")
        ax.set_ylabel(AXIS_LABELS[column])
        if tag:
            ax.set_title(tag, loc="left")
        ax.legend(frameon=False)
        ax.margins(x=0.0)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=spec.dpi)
    plt.close(fig)
    return fig
