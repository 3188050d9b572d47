"""
Static two-panel SVG chart: price on top, mini-max below.

The up mini-max is drawn solid and the down mini-max dashed. Frames are
``<rect>`` elements so the document holds exactly one ``<polyline>`` per
plotted series.
"""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .core import MiniMaxSeries, as_series
from .errors import ConfigError, UsageError

MARGIN = 40.0
GAP = 30.0


def _points(values: np.ndarray, left: float, top: float, width: float, height: float,
            lo: Optional[float] = None, hi: Optional[float] = None) -> str:
    n = values.size
    xs = left + width * np.arange(n) / max(n - 1, 1)
    lo = float(values.min()) if lo is None else lo
    hi = float(values.max()) if hi is None else hi
    if hi > lo:
        ys = top + height * (1.0 - (values - lo) / (hi - lo))
    else:
        ys = np.full(n, top + height / 2.0)
    return " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))


def _panel(parts: list, left, top, width, height, label: str) -> None:
    parts.append(f'<rect x="{left:.3f}" y="{top:.3f}" width="{width:.3f}" height="{height:.3f}" '
                 'fill="none" stroke="#999999" stroke-width="0.5"/>')
    parts.append(f'<text x="{left + 4:.3f}" y="{top + 12:.3f}" font-size="11" '
                 f'font-family="sans-serif">{escape(label)}</text>')


def emit_svg(series, u: MiniMaxSeries, d: Optional[MiniMaxSeries] = None,
             width: int = 800, height: int = 480, title: Optional[str] = None) -> str:
    series = as_series(series)
    if width <= 0 or height <= 0:
        raise ConfigError(f"canvas must have positive size, got {width}x{height}")
    n = len(series)
    if len(u) != n or (d is not None and len(d) != n):
        raise UsageError("price and mini-max series must have equal length")

    inner_w = width - 2 * MARGIN
    panel_h = (height - 2 * MARGIN - GAP) / 2
    if inner_w <= 0 or panel_h <= 0:
        raise ConfigError(f"canvas {width}x{height} too small to hold the panels")
    top_price = MARGIN
    top_mm = MARGIN + panel_h + GAP

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{MARGIN:.3f}" y="{MARGIN / 2 + 4:.3f}" font-size="13" '
                     f'font-family="sans-serif">{escape(title)}</text>')

    _panel(parts, MARGIN, top_price, inner_w, panel_h, "price")
    parts.append(f'<polyline class="price" fill="none" stroke="black" stroke-width="1" '
                 f'points="{_points(series.values, MARGIN, top_price, inner_w, panel_h)}"/>')

    label = f"mini-max (m={u.m})"
    _panel(parts, MARGIN, top_mm, inner_w, panel_h, label)
    # both mini-max curves share one vertical scale
    stacked = u.weights if d is None else np.concatenate((u.weights, d.weights))
    lo, hi = float(stacked.min()), float(stacked.max())
    for mm, css, dash in ((u, "up", ""), (d, "down", ' stroke-dasharray="6,4"')):
        if mm is None:
            continue
        points = _points(mm.weights, MARGIN, top_mm, inner_w, panel_h, lo, hi)
        parts.append(f'<polyline class="{css}" fill="none" stroke="black" stroke-width="1"{dash} '
                     f'points="{points}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def polyline_points(svg_text: str) -> dict:
    """Parse ``{class: [(x, y), ...]}`` back out of a document from :func:`emit_svg`."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg_text)
    out = {}
    for el in root.iter("{http://www.w3.org/2000/svg}polyline"):
        pts = [tuple(float(c) for c in p.split(",")) for p in el.get("points").split()]
        out[el.get("class")] = pts
    return out
