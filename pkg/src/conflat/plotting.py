"""Matplotlib figures written next to CLI reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .checks import CheckRecord  # noqa: E402
from .convergence import ConvergenceTable  # noqa: E402

_COLORS = {"pass": "tab:green", "fail": "tab:red", "error": "black", "info": "tab:gray"}
_META = {"Software": None}


def report_figure(records: list[CheckRecord], path: Path) -> Path:
    """log10(value / tolerance) for every check with a nonzero tolerance.

    Exact zeros are drawn at the floor of -17.
    """
    rows = [r for r in records if r.tolerance and r.value is not None]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.22 * len(rows))))
    ys = range(len(rows))
    margin = [max(-17.0, math.log10(max(abs(r.value), 1e-300) / r.tolerance)) for r in rows]
    ax.barh(list(ys), margin, color=[_COLORS[r.verdict] for r in rows])
    ax.set_yticks(list(ys), [r.check_id for r in rows], fontsize=6)
    ax.axvline(0.0, color="k", lw=0.8)
    ax.invert_yaxis()
    ax.set_xlabel("log10(measured / tolerance)")
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)
    return path


def convergence_figure(table: ConvergenceTable, path: Path) -> Path:
    pts = [(R, d) for R, d in zip(table.radii, table.deltas) if d > 0]
    fig, ax = plt.subplots(figsize=(5, 4))
    if pts:
        ax.loglog(*zip(*pts), "o-")
    ax.set_xlabel("truncation radius R")
    ax.set_ylabel("|K_R - K_Rmax|")
    ax.set_title(f"{table.spec.family} n={table.spec.n} q={table.spec.q} "
                 f"k={table.spec.k} l={table.spec.l}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)
    return path
