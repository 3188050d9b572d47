"""
Windowed evaluation of the mini-max.

``rolling_minimax`` slices a long series into fixed-length windows and runs
the batch indicator on each. ``StreamState`` keeps one sliding window and
repairs only the neighbour sums that a new tick invalidates.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from .core import (
    IndicatorParams,
    MiniMaxSeries,
    as_series,
    minimax,
    normalize_log_weights,
    relative_difference,
)
from .errors import DomainError, NotReadyError, UsageError


@dataclass(frozen=True)
class RollingConfig:
    window_n: int
    hop: int = 1
    params: IndicatorParams = field(default_factory=IndicatorParams)

    def __post_init__(self):
        if self.window_n < 2:
            raise UsageError(f"window must hold at least 2 samples, got {self.window_n}")
        if self.hop < 1:
            raise UsageError(f"hop must be >= 1, got {self.hop}")


@dataclass(frozen=True)
class RollingResult:
    windows: List[Tuple[int, MiniMaxSeries]]
    window_n: int

    def __len__(self):
        return len(self.windows)

    def __iter__(self):
        return iter(self.windows)

    def end_index(self, start: int) -> int:
        """Index of the last sample in the window starting at ``start``."""
        return start + self.window_n - 1


def window_starts(total: int, window_n: int, hop: int) -> range:
    return range(0, total - window_n + 1, hop)


def rolling_minimax(s, cfg: RollingConfig) -> RollingResult:
    s = as_series(s)
    if len(s) < cfg.window_n:
        raise UsageError(f"series of length {len(s)} is shorter than window {cfg.window_n}")
    x = s.values
    windows = [(start, minimax(x[start:start + cfg.window_n], cfg.params))
               for start in window_starts(len(s), cfg.window_n, cfg.hop)]
    return RollingResult(windows, cfg.window_n)


class StreamState:
    """Sliding-window mini-max updated one price at a time.

    Per push, at most ``2m + 1`` cached neighbour sums are touched: the
    ``m`` samples whose backward reach lost the evicted price, the ``m``
    samples whose forward reach gained the new price, and the new sample
    itself. ``touched`` records that count for the latest push.
    """

    def __init__(self, window_n: int, params: IndicatorParams = IndicatorParams()):
        if window_n < 2:
            raise UsageError(f"window must hold at least 2 samples, got {window_n}")
        self.window_n = window_n
        self.params = params
        self._sign = params.direction.sign
        self._prices: deque = deque()
        self._q_next: deque = deque()
        self._q_prev: deque = deque()
        # _steps[j] is the log ratio linking buffer positions j and j+1
        self._steps: deque = deque()
        self.pushes = 0
        self.touched = 0

    def _term(self, neighbour: float, here: float) -> float:
        return math.exp(self._sign * relative_difference(neighbour, here))

    def _step(self, j: int) -> float:
        a_next, a_prev = self._q_next[j], self._q_prev[j]
        b_next, b_prev = self._q_next[j + 1], self._q_prev[j + 1]
        return (math.log(a_next) - math.log(a_next + a_prev)) - (
            math.log(b_prev) - math.log(b_next + b_prev))

    def _evict(self) -> None:
        old = self._prices.popleft()
        self._q_next.popleft()
        self._q_prev.popleft()
        self._steps.popleft()
        m = self.params.m
        reach = min(m, len(self._prices))
        for p in range(reach):
            if p == 0:
                self._q_prev[0] = 0.0
            else:
                self._q_prev[p] -= self._term(old, self._prices[p])
            self.touched += 1
        for j in range(min(reach, len(self._steps))):
            self._steps[j] = self._step(j)

    def _append(self, price: float) -> None:
        m = self.params.m
        j = len(self._prices)
        self._prices.append(price)
        q_prev = 0.0
        for k in range(1, min(m, j) + 1):
            q_prev += self._term(self._prices[j - k], price)
            self._q_next[j - k] += self._term(price, self._prices[j - k])
            self.touched += 1
        self._q_next.append(0.0)
        self._q_prev.append(q_prev)
        self.touched += 1
        if j:
            self._steps.append(0.0)
            for i in range(max(0, j - m - 1), j):
                self._steps[i] = self._step(i)

    def push(self, price: float) -> "StreamState":
        if not (isinstance(price, (int, float, np.floating, np.integer)) and price > 0
                and math.isfinite(price)):
            raise DomainError(f"price must be strictly positive and finite, got {price!r}")
        self.touched = 0
        if len(self._prices) == self.window_n:
            self._evict()
        self._append(float(price))
        self.pushes += 1
        return self

    def extend(self, prices: Iterable[float]) -> "StreamState":
        for p in prices:
            self.push(p)
        return self

    @property
    def ready(self) -> bool:
        return len(self._prices) == self.window_n

    @property
    def buffer(self) -> np.ndarray:
        return np.fromiter(self._prices, dtype=float, count=len(self._prices))

    def query(self) -> MiniMaxSeries:
        if not self.ready:
            raise NotReadyError(
                f"{len(self._prices)} of {self.window_n} prices buffered; window not full")
        log_w = np.concatenate(([0.0], np.cumsum(np.fromiter(self._steps, dtype=float))))
        return MiniMaxSeries(normalize_log_weights(log_w), self.params.direction, self.params.m)


def stream_push(state: StreamState, price: float) -> StreamState:
    return state.push(price)


def stream_query(state: StreamState) -> MiniMaxSeries:
    return state.query()
