import numpy as np
import pytest

from moving_minimax.core import Direction, IndicatorParams, tunneling_weights, transition_probabilities


def stationary_distribution(values, m, direction=Direction.UP):
    """Stationary law of the nearest-neighbour chain, from a dense linear solve.

    Independent of the recurrence used by the library: builds the full
    transition matrix and solves ``pi (P - I) = 0`` with ``sum(pi) = 1``.
    """
    n = len(values)
    params = IndicatorParams(m, direction)
    P = np.zeros((n, n))
    for i in range(n):
        p = transition_probabilities(tunneling_weights(values, i, params))
        if i + 1 < n:
            P[i, i + 1] = p.p_next
        if i > 0:
            P[i, i - 1] = p.p_prev
    A = np.vstack([(P - np.eye(n)).T, np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    return pi


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_walk(rng, n, vol=0.02, start=100.0):
    return start * np.exp(np.cumsum(rng.normal(0.0, vol, n)))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
    terminalreporter.write_line(f"{sum(p for _, p in results)}/{len(results)} criteria passed")
