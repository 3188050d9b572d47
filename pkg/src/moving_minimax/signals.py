"""
Trading signals built on the mini-max: resistance/support crossings and
the spindle pattern that u and d trace out around head-and-shoulders tops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy.signal import peak_prominences

from .core import Direction, IndicatorParams, MiniMaxSeries, PriceSeries, as_series, minimax
from .errors import UsageError


class CrossingKind(str, Enum):
    RESISTANCE = "resistance"
    SUPPORT = "support"


class CrossingSign(str, Enum):
    UP_THROUGH = "up_through"
    DOWN_THROUGH = "down_through"


class ExtremumKind(str, Enum):
    PEAK = "peak"
    TROUGH = "trough"


@dataclass(frozen=True)
class CrossingEvent:
    index: float
    kind: CrossingKind
    sign: CrossingSign


@dataclass(frozen=True)
class SpindleInterval:
    start_index: int
    end_index: int
    score: float
    crossings: int


@dataclass(frozen=True)
class ExtremumPoint:
    index: int
    kind: ExtremumKind
    weight: float
    prominence: float


@dataclass(frozen=True)
class SpindleConfig:
    """Thresholds for :func:`detect_spindle`.

    ``band`` is measured in units of the uniform weight ``1/n``;
    ``min_len`` defaults to ``2 * m`` of the inputs when left as ``None``.
    """

    band: float = 0.5
    min_len: Optional[int] = None
    min_crossings: int = 3

    def __post_init__(self):
        if self.band < 0:
            raise UsageError("band must be non-negative")
        if self.min_len is not None and self.min_len < 2:
            raise UsageError("min_len must be at least 2")
        if self.min_crossings < 0:
            raise UsageError("min_crossings must be non-negative")


_KIND_FOR_DIRECTION = {Direction.UP: CrossingKind.RESISTANCE, Direction.DOWN: CrossingKind.SUPPORT}


def simple_moving_average(s, p: int) -> PriceSeries:
    """Trailing mean over ``p`` samples; output has ``n - p + 1`` entries.

    Timestamps, if any, follow the last sample of each window.
    """
    s = as_series(s)
    n = len(s)
    if p < 1:
        raise UsageError(f"moving-average period must be >= 1, got {p}")
    if p > n:
        raise UsageError(f"moving-average period {p} exceeds series length {n}")
    if n - p + 1 < 2:
        raise UsageError(f"moving-average period {p} leaves fewer than 2 samples")
    # cumulative-sum differences drift; average each window directly
    windows = np.lib.stride_tricks.sliding_window_view(s.values, p)
    ts = None if s.timestamps is None else s.timestamps[p - 1:]
    return PriceSeries(windows.mean(axis=1), ts)


def _check_pair(a: MiniMaxSeries, b: MiniMaxSeries) -> None:
    if len(a) != len(b):
        raise UsageError(f"length mismatch: {len(a)} vs {len(b)}")
    if a.direction != b.direction:
        raise UsageError("cannot cross mini-max series of different directions")


def sign_changes(diff: np.ndarray) -> List[tuple]:
    """Locate sign changes of ``diff``.

    Returns ``(position, rising)`` pairs. A change between adjacent
    non-zero samples is placed by linear interpolation; a change across a
    run of exact zeros is placed on the first zero.
    """
    out = []
    nz = np.flatnonzero(diff)
    for p, q in zip(nz[:-1], nz[1:]):
        dp, dq = diff[p], diff[q]
        if (dp > 0) == (dq > 0):
            continue
        if q == p + 1:
            pos = p + dp / (dp - dq)
        else:
            pos = float(p + 1)
        out.append((float(pos), bool(dq > 0)))
    return out


def detect_crossings(a: MiniMaxSeries, b: MiniMaxSeries,
                     kind: Optional[CrossingKind] = None) -> List[CrossingEvent]:
    """Crossings of ``a`` through ``b``; ``UP_THROUGH`` when ``a`` rises above ``b``."""
    _check_pair(a, b)
    expected = _KIND_FOR_DIRECTION[a.direction]
    if kind is None:
        kind = expected
    elif CrossingKind(kind) != expected:
        raise UsageError(f"{kind} crossings require the other mini-max direction")
    diff = a.weights - b.weights
    return [CrossingEvent(pos, expected,
                          CrossingSign.UP_THROUGH if rising else CrossingSign.DOWN_THROUGH)
            for pos, rising in sign_changes(diff)]


def strict_local_maxima(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.size < 3:
        return np.array([], dtype=int)
    inner = (w[1:-1] > w[:-2]) & (w[1:-1] > w[2:])
    return np.flatnonzero(inner) + 1


def extract_extrema(mm: MiniMaxSeries, min_prominence: float = 0.0) -> List[ExtremumPoint]:
    """Strict local maxima of the weights, filtered by topographic prominence.

    Maxima of an up mini-max are price peaks; maxima of a down mini-max are
    price troughs.
    """
    if not 0 <= min_prominence <= 1:
        raise UsageError(f"min_prominence must lie in [0, 1], got {min_prominence}")
    peaks = strict_local_maxima(mm.weights)
    if peaks.size == 0:
        return []
    prominences = peak_prominences(mm.weights, peaks)[0]
    kind = ExtremumKind.PEAK if mm.direction is Direction.UP else ExtremumKind.TROUGH
    return [ExtremumPoint(int(i), kind, float(mm.weights[i]), float(p))
            for i, p in zip(peaks, prominences) if p >= min_prominence]


def detect_spindle(u: MiniMaxSeries, d: MiniMaxSeries,
                   cfg: SpindleConfig = SpindleConfig()) -> List[SpindleInterval]:
    """Stretches where the up and down mini-max stay close and braid.

    An interval is a maximal run of samples with ``|u - d| <= band / n``.
    It is reported when it spans at least ``min_len`` samples and ``u - d``
    changes sign at least ``min_crossings`` times inside it. The score is
    the crossing count divided by the most crossings the run could hold.
    """
    if u.direction is not Direction.UP or d.direction is not Direction.DOWN:
        raise UsageError("detect_spindle expects an up mini-max and a down mini-max")
    if len(u) != len(d):
        raise UsageError(f"length mismatch: {len(u)} vs {len(d)}")
    n = len(u)
    min_len = cfg.min_len if cfg.min_len is not None else max(2, 2 * u.m)
    diff = u.weights - d.weights
    close = np.abs(diff) <= cfg.band / n

    out = []
    edges = np.diff(np.concatenate(([0], close.astype(np.int8), [0])))
    for start, stop in zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1)):
        length = stop - start
        if length < min_len:
            continue
        crossings = len(sign_changes(diff[start:stop]))
        if crossings < cfg.min_crossings:
            continue
        score = min(1.0, float(crossings) / (length - 1))
        out.append(SpindleInterval(int(start), int(stop - 1), score, crossings))
    return out


def align_to_average(s, ma_period: int) -> tuple[PriceSeries, PriceSeries]:
    """Price and its SMA over the SMA's valid range (trailing alignment)."""
    s = as_series(s)
    sma = simple_moving_average(s, ma_period)
    return s.slice(ma_period - 1, len(s)), sma


def support_resistance_pipeline(s, m: int, ma_period: int) -> List[CrossingEvent]:
    """Resistance events from up mini-max crossings of price vs its SMA,
    support events from the down mini-max pair, merged by index.

    Indices refer to positions in the original series.
    """
    s = as_series(s)
    if len(s) < ma_period + 1:
        raise UsageError(f"series of length {len(s)} too short for moving average {ma_period}")
    price, sma = align_to_average(s, ma_period)
    offset = ma_period - 1
    events = []
    for direction in Direction:
        params = IndicatorParams(m, direction)
        for ev in detect_crossings(minimax(price, params), minimax(sma, params)):
            events.append(CrossingEvent(ev.index + offset, ev.kind, ev.sign))
    events.sort(key=lambda e: (e.index, e.kind.value))
    return events
