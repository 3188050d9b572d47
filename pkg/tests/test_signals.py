import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moving_minimax.core import Direction, IndicatorParams, MiniMaxSeries, minimax, minimax_pair
from moving_minimax.errors import UsageError
from moving_minimax.signals import (
    CrossingKind,
    CrossingSign,
    ExtremumKind,
    SpindleConfig,
    detect_crossings,
    detect_spindle,
    extract_extrema,
    simple_moving_average,
    support_resistance_pipeline,
)
from moving_minimax.synthetic import (
    HEAD_AND_SHOULDERS_SPAN,
    head_and_shoulders,
    ramp,
    ramp_then_decay,
)


def mm(values, direction=Direction.UP, m=1):
    return MiniMaxSeries(np.asarray(values, dtype=float), direction, m)


def pair_with_diff(diff, direction=Direction.UP):
    base = np.full(len(diff), 0.5)
    return mm(base + np.asarray(diff), direction), mm(base, direction)


def brute_force_peaks(w):
    return [i for i in range(1, len(w) - 1) if w[i - 1] < w[i] and w[i] > w[i + 1]]


def brute_force_prominence(w, i):
    left_min = w[i]
    j = i - 1
    while j >= 0 and w[j] <= w[i]:
        left_min = min(left_min, w[j])
        j -= 1
    right_min = w[i]
    j = i + 1
    while j < len(w) and w[j] <= w[i]:
        right_min = min(right_min, w[j])
        j += 1
    return w[i] - max(left_min, right_min)


class TestMovingAverage:
    def test_examples(self):
        np.testing.assert_array_equal(simple_moving_average([1, 2, 3, 4], 1).values, [1, 2, 3, 4])
        np.testing.assert_array_equal(simple_moving_average([1, 2, 3, 4], 2).values, [1.5, 2.5, 3.5])
        np.testing.assert_array_equal(simple_moving_average([6.0] * 7, 4).values, [6.0] * 4)

    def test_timestamps_trail(self):
        from moving_minimax.core import PriceSeries

        s = PriceSeries([1, 2, 3, 4], (10, 11, 12, 13))
        assert simple_moving_average(s, 3).timestamps == (12, 13)

    def test_errors(self):
        with pytest.raises(UsageError):
            simple_moving_average([1, 2, 3], 4)
        with pytest.raises(UsageError):
            simple_moving_average([1, 2, 3], 0)


class TestCrossings:
    def test_identical(self):
        a = minimax([1, 3, 2, 5, 4])
        assert detect_crossings(a, a) == []

    def test_interpolated(self):
        a, b = pair_with_diff([-0.1, 0.1, 0.1])
        (ev,) = detect_crossings(a, b, CrossingKind.RESISTANCE)
        assert ev.index == pytest.approx(0.5, abs=1e-12)
        assert ev.sign is CrossingSign.UP_THROUGH
        assert ev.kind is CrossingKind.RESISTANCE

    def test_exact_zero_attaches_to_earlier(self):
        a, b = pair_with_diff([0.2, 0.0, -0.2], Direction.DOWN)
        (ev,) = detect_crossings(a, b)
        assert ev.index == 1.0
        assert ev.sign is CrossingSign.DOWN_THROUGH
        assert ev.kind is CrossingKind.SUPPORT

    def test_touch_without_crossing(self):
        a, b = pair_with_diff([0.2, 0.0, 0.0, 0.1, 0.0])
        assert detect_crossings(a, b) == []

    def test_usage_errors(self):
        with pytest.raises(UsageError):
            detect_crossings(mm([0.5, 0.5]), mm([0.3, 0.3, 0.4]))
        with pytest.raises(UsageError):
            detect_crossings(mm([0.5, 0.5]), mm([0.5, 0.5], Direction.DOWN))
        with pytest.raises(UsageError):
            detect_crossings(mm([0.5, 0.5]), mm([0.4, 0.6]), CrossingKind.SUPPORT)

    @given(st.lists(st.sampled_from([-0.3, -0.1, 0.0, 0.05, 0.2]), min_size=2, max_size=40))
    def test_alternation_and_swap(self, diff):
        a, b = pair_with_diff(diff)
        events = detect_crossings(a, b)
        ups = sum(e.sign is CrossingSign.UP_THROUGH for e in events)
        assert abs(ups - (len(events) - ups)) <= 1
        for e1, e2 in zip(events, events[1:]):
            assert e1.index < e2.index
            assert e1.sign is not e2.sign
        swapped = detect_crossings(b, a)
        assert [e.index for e in swapped] == pytest.approx([e.index for e in events])
        assert all(s.sign is not e.sign for s, e in zip(swapped, events))
        for e in events:
            assert 0 <= e.index <= len(diff) - 1


class TestExtrema:
    def test_constant_price(self):
        # edges carry half the interior weight, interior is a plateau: no strict peak
        assert extract_extrema(minimax([5.0] * 8, IndicatorParams(1))) == []

    def test_hand_pattern(self):
        (p,) = extract_extrema(mm([0.1, 0.5, 0.4]), 0.0)
        assert p.index == 1 and p.kind is ExtremumKind.PEAK and p.weight == 0.5

    def test_down_gives_troughs(self):
        out = extract_extrema(mm([0.1, 0.5, 0.4], Direction.DOWN))
        assert [e.kind for e in out] == [ExtremumKind.TROUGH]

    def test_prominence_filter(self):
        w = np.array([0.02, 0.08, 0.03, 0.05, 0.30, 0.06, 0.04, 0.10, 0.02, 0.30]) / 1.0
        w = w / w.sum()
        peaks = brute_force_peaks(w)
        assert peaks == [1, 4, 7]
        proms = {i: brute_force_prominence(w, i) for i in peaks}
        threshold = max(proms[1], proms[7]) * 1.01
        assert proms[4] > threshold
        out = extract_extrema(mm(w), threshold)
        assert [e.index for e in out] == [4]
        assert out[0].prominence == pytest.approx(proms[4], abs=1e-15)

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=40))
    def test_brute_force_equivalence(self, raw):
        w = np.asarray(raw, dtype=float)
        w = w / w.sum()
        out = extract_extrema(mm(w), 0.0)
        assert [e.index for e in out] == brute_force_peaks(w)
        for e in out:
            assert e.prominence == pytest.approx(brute_force_prominence(w, e.index), abs=1e-15)

    def test_bad_threshold(self):
        with pytest.raises(UsageError):
            extract_extrema(mm([0.2, 0.8]), 1.5)


class TestSpindle:
    def test_constant_price_has_no_braid(self):
        u, d = minimax_pair([9.0] * 30, 3)
        np.testing.assert_array_equal(u.weights, d.weights)
        assert detect_spindle(u, d) == []
        (iv,) = detect_spindle(u, d, SpindleConfig(min_crossings=0))
        assert (iv.start_index, iv.end_index, iv.score) == (0, 29, 0.0)

    def test_separated_curves(self):
        u = mm(np.full(20, 0.06), Direction.UP, 2)
        d = mm(np.full(20, 0.04), Direction.DOWN, 2)
        assert detect_spindle(u, d, SpindleConfig(band=100.0)) == []

    def test_head_and_shoulders(self):
        u, d = minimax_pair(head_and_shoulders(), 5)
        out = detect_spindle(u, d)
        lo, hi = HEAD_AND_SHOULDERS_SPAN
        assert any(iv.start_index <= hi and iv.end_index >= lo for iv in out)
        for iv in out:
            assert 0 <= iv.score <= 1
            assert iv.crossings >= 3

    def test_monotone_ramp(self):
        assert detect_spindle(*minimax_pair(ramp(), 5)) == []

    def test_direction_checks(self):
        u, d = minimax_pair([1.0, 2.0, 3.0], 1)
        with pytest.raises(UsageError):
            detect_spindle(d, u)
        with pytest.raises(UsageError):
            detect_spindle(u, minimax_pair([1.0, 2.0, 3.0, 4.0], 1)[1])

    @given(st.integers(0, 2**32 - 1), st.floats(0.1, 3.0), st.integers(2, 8), st.integers(0, 4))
    def test_intervals_disjoint_and_maximal(self, seed, band, min_len, min_cross):
        rng = np.random.default_rng(seed)
        s = 100 + np.cumsum(rng.normal(0, 0.3, 80))
        u, d = minimax_pair(s, 3)
        cfg = SpindleConfig(band, min_len, min_cross)
        out = detect_spindle(u, d, cfg)
        limit = band / len(s)
        close = np.abs(u.weights - d.weights) <= limit
        for a, b in zip(out, out[1:]):
            assert a.end_index < b.start_index
        for iv in out:
            assert iv.end_index - iv.start_index + 1 >= min_len
            assert close[iv.start_index:iv.end_index + 1].all()
            assert iv.start_index == 0 or not close[iv.start_index - 1]
            assert iv.end_index == len(s) - 1 or not close[iv.end_index + 1]


class TestPipeline:
    def test_constant(self):
        assert support_resistance_pipeline([4.0] * 40, 5, 10) == []

    def test_identity_average(self, rng):
        s = 100 + np.cumsum(rng.normal(0, 1, 60)) + 50
        assert support_resistance_pipeline(s, 3, 1) == []

    def test_peak_gives_resistance_on_downslope(self):
        s = ramp_then_decay(peak_at=100)
        events = support_resistance_pipeline(s, 5, 10)
        res = [e for e in events if e.kind is CrossingKind.RESISTANCE]
        assert res
        assert any(100 <= e.index <= 115 for e in res)
        # brute-force scan of the aligned pair agrees
        price = minimax(s[9:], IndicatorParams(5)).weights
        sma = minimax(np.convolve(s, np.ones(10) / 10, mode="valid"), IndicatorParams(5)).weights
        diff = price - sma
        flips = [i for i in range(len(diff) - 1) if diff[i] * diff[i + 1] < 0]
        assert [int(e.index) - 9 for e in res] == flips

    def test_sorted_and_deterministic(self, rng):
        s = 100 * np.exp(np.cumsum(rng.normal(0, 0.02, 300)))
        a = support_resistance_pipeline(s, 4, 12)
        assert a == support_resistance_pipeline(s, 4, 12)
        assert [e.index for e in a] == sorted(e.index for e in a)
        assert {e.kind for e in a} == {CrossingKind.RESISTANCE, CrossingKind.SUPPORT}

    def test_too_short(self):
        with pytest.raises(UsageError):
            support_resistance_pipeline([1.0, 2.0, 3.0], 2, 3)
