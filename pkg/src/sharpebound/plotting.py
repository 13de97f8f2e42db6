"""Figures for frontier curves, table checks and simulated trajectories.

Everything renders off-screen (Agg) and is written straight to a file; the
format follows the file extension (``.svg``, ``.png``, ``.pdf``).
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .frontier import FrontierCurve  # noqa: E402

COLW = 3.4
GOLDEN = 0.618
COLORS = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a"]

NAMES = {
    ("sharpe", "one_sided"): "F1",
    ("sharpe", "two_sided"): "F2",
    ("sortino", "one_sided"): "G1",
    ("sortino", "two_sided"): "G2",
}

_RC = {
    "font.size": 9,
    "font.family": "serif",
    "axes.linewidth": 0.6,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "sharpebound",
    "svg.fonttype": "path",
}


def _save(fig, path: Union[str, Path]) -> Path:
    path = Path(path)
    meta = {"Date": None} if path.suffix.lower() == ".svg" else None
    fig.savefig(path, bbox_inches="tight", metadata=meta)
    plt.close(fig)
    return path


def curve_label(curve: FrontierCurve) -> str:
    p = curve.points[0]
    return f"{NAMES[(p.ratio_kind, p.bound_kind)]}(B)"


def plot_curves(
    panels: Sequence[FrontierCurve],
    path: Union[str, Path],
    title: Optional[str] = None,
) -> Path:
    """One subplot per curve, side by side, value against B."""
    with plt.rc_context(_RC):
        n = len(panels)
        fig, axes = plt.subplots(1, n, figsize=(n * COLW, COLW * GOLDEN * 1.2), squeeze=False)
        for ax, curve in zip(axes[0], panels):
            ax.plot(curve.B, curve.values, color=COLORS[0])
            ax.set_xlabel("B")
            ax.set_ylabel(curve_label(curve))
            ax.set_xlim(curve.B_from, curve.B_to)
            ax.grid(alpha=0.3, linewidth=0.4)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        return _save(fig, path)


def plot_table_check(rows, path: Union[str, Path]) -> Path:
    """Published points over the recomputed values, one marker set per function."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(COLW * 1.4, COLW * GOLDEN * 1.4))
        for color, fn in zip(COLORS, sorted({r.function for r in rows})):
            sel = [r for r in rows if r.function == fn]
            ax.plot([r.B for r in sel], [r.value for r in sel], "-", color=color, label=f"{fn} computed")
            ax.plot(
                [r.B for r in sel], [r.published.value for r in sel], "o",
                mfc="none", color=color, label=f"{fn} published",
            )
        ax.set_xlabel("B")
        ax.set_ylabel("supremum")
        ax.legend(frameon=False, fontsize=7)
        fig.tight_layout()
        return _save(fig, path)


def plot_trajectory(traj, path: Union[str, Path], population: Optional[float] = None) -> Path:
    """Running Sharpe and Sortino ratios against n on a log axis."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(COLW * 1.4, COLW * GOLDEN * 1.4))
        pts = [p for p in traj if p.sharpe is not None]
        ax.plot([p.n for p in pts], [p.sharpe for p in pts], color=COLORS[0], label="Sharpe")
        pts = [p for p in traj if p.sortino is not None]
        ax.plot([p.n for p in pts], [p.sortino for p in pts], color=COLORS[1], label="Sortino")
        if population is not None:
            ax.axhline(population, color="0.4", linestyle="--", linewidth=0.8, label="limit")
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("running ratio")
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)
