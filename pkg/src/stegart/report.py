"""Figures for tamper-simulation reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .tamper import TamperReport  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def plot_tamper_reports(reports: Sequence[TamperReport], path: str | Path) -> Path:
    """Grouped bars of detection and recovery rate per perturbation kind."""
    path = Path(path)
    kinds = [r.kind for r in reports]
    x = range(len(reports))
    width = 0.38
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.2, 2.8))
        det = ax.bar([i - width / 2 for i in x], [r.detection_rate for r in reports], width,
                     label="detected", color="#4c72b0")
        rec = ax.bar([i + width / 2 for i in x], [r.recovery_rate for r in reports], width,
                     label="payload recovered", color="#dd8452")
        for bars in (det, rec):
            ax.bar_label(bars, fmt="%.2f", fontsize=7, padding=1)
        ax.set_xticks(list(x), kinds)
        ax.set_ylim(0, 1.15)
        ax.set_ylabel("fraction of trials")
        n = {r.trials for r in reports}
        ax.set_title(f"single-point perturbations (n={'/'.join(map(str, sorted(n)))})")
        ax.legend(frameon=False, fontsize=7, loc="upper center", ncol=2)
        fig.savefig(path)
        plt.close(fig)
    return path
