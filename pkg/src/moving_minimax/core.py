"""
Moving mini-max indicator.

The indicator treats a price window as the state space of a birth-death
Markov chain. Hopping probabilities towards each neighbour are built from
exponentials of relative price differences over the ``m`` nearest samples,
and the normalized stationary distribution of that chain is the indicator.
The ``Up`` variant concentrates weight on local maxima, ``Down`` on local
minima.

All indices are zero-based. Neighbour sums are truncated at the series
edges (out-of-range terms are simply omitted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DegenerateInputError, DomainError, OracleRangeError, UsageError


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.UP else -1.0


@dataclass(frozen=True)
class PriceSeries:
    """Ordered, strictly positive prices with optional timestamps."""

    values: np.ndarray
    timestamps: Optional[tuple] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise UsageError("price series must be one-dimensional")
        if values.size < 2:
            raise DomainError(f"price series needs at least 2 samples, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise DomainError("price series contains non-finite values")
        bad = np.flatnonzero(values <= 0)
        if bad.size:
            raise DomainError(f"prices must be strictly positive (index {bad[0]}: {values[bad[0]]!r})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

        if self.timestamps is not None:
            ts = tuple(self.timestamps)
            if len(ts) != values.size:
                raise UsageError("timestamps and values differ in length")
            keys = [time_key(t) for t in ts]
            if any(b < a for a, b in zip(keys, keys[1:])):
                raise UsageError("timestamps must be non-decreasing")
            object.__setattr__(self, "timestamps", ts)

    def __len__(self) -> int:
        return self.values.size

    def slice(self, start: int, stop: int) -> "PriceSeries":
        ts = None if self.timestamps is None else self.timestamps[start:stop]
        return PriceSeries(self.values[start:stop], ts)


@dataclass(frozen=True)
class IndicatorParams:
    m: int = 5
    direction: Direction = Direction.UP

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise UsageError(f"smoothing window m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "direction", Direction(self.direction))


@dataclass(frozen=True)
class TunnelingWeights:
    q_next: float
    q_prev: float


@dataclass(frozen=True)
class TransitionProbabilities:
    p_next: float
    p_prev: float


@dataclass(frozen=True)
class LogWeightSeries:
    """Unnormalized chain weights stored as logarithms; ``log_weights[0] == 0``."""

    log_weights: np.ndarray


@dataclass(frozen=True)
class MiniMaxSeries:
    weights: np.ndarray
    direction: Direction
    m: int

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "direction", Direction(self.direction))

    def __len__(self) -> int:
        return self.weights.size


def time_key(value):
    """Sort key for timestamps: numbers, then ISO dates, else raw text."""
    if isinstance(value, str):
        try:
            return (0, float(value), "")
        except ValueError:
            pass
        try:
            return (1, datetime.fromisoformat(value).timestamp(), "")
        except ValueError:
            return (2, 0.0, value)
    if isinstance(value, datetime):
        return (1, value.timestamp(), "")
    return (0, float(value), "")


def as_series(s) -> PriceSeries:
    return s if isinstance(s, PriceSeries) else PriceSeries(s)


def relative_difference(a: float, b: float) -> float:
    """Return ``2(a - b)/(a + b)``, which lies in the open interval (-2, 2)."""
    if not (a > 0 and b > 0):
        raise DomainError(f"prices must be strictly positive, got {a!r} and {b!r}")
    return 2.0 * (a - b) / (a + b)


def tunneling_weights(s, i: int, params: IndicatorParams) -> TunnelingWeights:
    """Forward and backward neighbour sums at sample ``i``.

    Each sum runs over ``k = 1..m`` and skips terms whose neighbour index
    falls outside the series.
    """
    s = as_series(s)
    n = len(s)
    if not 0 <= i < n:
        raise UsageError(f"index {i} out of range for series of length {n}")
    x = s.values
    sign = params.direction.sign
    q_next = 0.0
    for k in range(1, min(params.m, n - 1 - i) + 1):
        q_next += math.exp(sign * relative_difference(x[i + k], x[i]))
    q_prev = 0.0
    for k in range(1, min(params.m, i) + 1):
        q_prev += math.exp(sign * relative_difference(x[i - k], x[i]))
    return TunnelingWeights(q_next, q_prev)


def transition_probabilities(w: TunnelingWeights) -> TransitionProbabilities:
    total = w.q_next + w.q_prev
    if not total > 0:
        raise DegenerateInputError("both tunneling weights are zero")
    return TransitionProbabilities(w.q_next / total, w.q_prev / total)


def neighbour_sums(x: np.ndarray, m: int, sign: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized forward/backward tunneling sums for every sample of ``x``.

    Terms are added in increasing ``k`` for each sample, the same order as
    :func:`tunneling_weights`.
    """
    n = x.size
    q_next = np.zeros(n)
    q_prev = np.zeros(n)
    for k in range(1, min(m, n - 1) + 1):
        ahead, here = x[k:], x[:-k]
        arg = 2.0 * (ahead - here) / (ahead + here)
        q_next[:-k] += np.exp(sign * arg)
        q_prev[k:] += np.exp(-sign * arg)
    return q_next, q_prev


def log_increments(q_next: np.ndarray, q_prev: np.ndarray) -> np.ndarray:
    """``ln P(i-1 -> i) - ln P(i -> i-1)`` for ``i = 1..n-1``."""
    total = q_next + q_prev
    log_forward = np.log(q_next[:-1]) - np.log(total[:-1])
    log_backward = np.log(q_prev[1:]) - np.log(total[1:])
    return log_forward - log_backward


def accumulate_log_weights(s, params: IndicatorParams) -> LogWeightSeries:
    s = as_series(s)
    q_next, q_prev = neighbour_sums(s.values, params.m, params.direction.sign)
    # q_prev[i] > 0 for i >= 1 and q_next[i] > 0 for i <= n-2 by construction
    steps = log_increments(q_next, q_prev)
    log_w = np.concatenate(([0.0], np.cumsum(steps)))
    assert np.all(np.isfinite(log_w)), "non-finite log weight"
    return LogWeightSeries(log_w)


def normalize_log_weights(log_w: np.ndarray) -> np.ndarray:
    shifted = np.exp(log_w - log_w.max())
    return shifted / shifted.sum()


def minimax(s, params: IndicatorParams = IndicatorParams()) -> MiniMaxSeries:
    """Normalized moving mini-max weights of ``s``."""
    log_w = accumulate_log_weights(s, params).log_weights
    return MiniMaxSeries(normalize_log_weights(log_w), params.direction, params.m)


def minimax_pair(s, m: int) -> tuple[MiniMaxSeries, MiniMaxSeries]:
    """Up and down mini-max of ``s`` with the same window width."""
    return (minimax(s, IndicatorParams(m, Direction.UP)),
            minimax(s, IndicatorParams(m, Direction.DOWN)))


def reference_minimax(s, params: IndicatorParams) -> MiniMaxSeries:
    """Literal linear-domain evaluation, one scalar at a time.

    Used as a test oracle only. Raises :class:`OracleRangeError` once the
    running product leaves the range of double precision.
    """
    s = as_series(s)
    n = len(s)
    probs = [transition_probabilities(tunneling_weights(s, i, params)) for i in range(n)]
    u = [1.0]
    for i in range(1, n):
        ratio = probs[i - 1].p_next / probs[i].p_prev
        u.append(u[-1] * ratio)
        if not (math.isfinite(u[-1]) and u[-1] > 0 and u[-1] > 1e-300):
            raise OracleRangeError(f"direct product out of range at index {i}")
    total = sum(u)
    if not math.isfinite(total):
        raise OracleRangeError("sum of direct products overflowed")
    return MiniMaxSeries(np.array([v / total for v in u]), params.direction, params.m)
