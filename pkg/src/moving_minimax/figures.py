"""Matplotlib rendering of price and mini-max panels for report files."""

from __future__ import annotations

from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .core import MiniMaxSeries, as_series  # noqa: E402

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.linewidth": 0.6,
    "lines.linewidth": 1.0,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "legend.fontsize": 8,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "moving-minimax",
}


def render_figure(series, u: MiniMaxSeries, d: Optional[MiniMaxSeries] = None,
                  path: Optional[str] = None, spans: Iterable[tuple] = (),
                  title: Optional[str] = None):
    """Price (top) over mini-max (bottom); u solid, d dashed.

    ``spans`` are ``(start, end)`` index pairs shaded on both panels, e.g.
    spindle intervals. The figure is saved when ``path`` is given, with the
    format taken from its extension.
    """
    series = as_series(series)
    x = np.arange(len(series))
    with plt.rc_context(STYLE):
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6.0, 4.0))
        top.plot(x, series.values, color="black")
        top.set_ylabel("price")
        bottom.plot(x, u.weights, color="black", linestyle="-", label="u")
        if d is not None:
            bottom.plot(x, d.weights, color="black", linestyle="--", label="d")
        bottom.set_ylabel(f"mini-max, m={u.m}")
        bottom.set_xlabel("sample")
        bottom.legend(loc="upper right")
        for start, end in spans:
            for ax in (top, bottom):
                ax.axvspan(start, end, color="0.85", zorder=0)
        if title:
            top.set_title(title)
        fig.tight_layout()
        if path is not None:
            fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
            plt.close(fig)
    return fig
