"""Deterministic synthetic price series used by the demos and tests."""

from __future__ import annotations

import numpy as np

NOISY_PEAK_CENTERS = (50, 120, 190, 250)
NOISY_PEAK_HEIGHTS = (8.0, 12.0, 10.0, 6.0)

SHOULDER_CENTERS = (70, 100, 130)
HEAD_AND_SHOULDERS_SPAN = (55, 145)


def _bump(t, center, width, height):
    return height * np.exp(-0.5 * ((t - center) / width) ** 2)


def noisy_peaks(n: int = 300, noise: float = 0.6, seed: int = 2024) -> np.ndarray:
    """Flat base at 100 with four Gaussian peaks plus seeded white noise."""
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    s = 100.0 + sum(_bump(t, c, 8.0, h) for c, h in zip(NOISY_PEAK_CENTERS, NOISY_PEAK_HEIGHTS))
    return s + rng.normal(0.0, noise, n)


def head_and_shoulders(n: int = 200) -> np.ndarray:
    """Three peaks on a flat neckline, the middle one tallest."""
    t = np.arange(n)
    left, head, right = SHOULDER_CENTERS
    return (100.0 + _bump(t, left, 6.0, 6.0) + _bump(t, head, 7.0, 10.0)
            + _bump(t, right, 6.0, 6.0))


def ramp(n: int = 200, start: float = 100.0, stop: float = 150.0) -> np.ndarray:
    return np.linspace(start, stop, n)


def ramp_then_decay(n: int = 200, peak_at: int = 100) -> np.ndarray:
    """Linear climb to a single pronounced top, then exponential decay."""
    t = np.arange(n, dtype=float)
    up = 100.0 + 0.4 * t
    top = up[peak_at]
    down = 100.0 + (top - 100.0) * np.exp(-(t - peak_at) / 30.0)
    return np.where(t <= peak_at, up, down)
