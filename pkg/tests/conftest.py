import time

import mpmath as mp
import pytest

from naive_integral.contour import eval_components
from naive_integral.theta import tau_of_t

ACCEPTANCE = {}


def record(criterion: int, passed: bool, detail: str):
    """Keep one pass/fail line per acceptance criterion for the session summary."""
    line = f"criterion {criterion:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(autouse=True)
def _restore_mp_context():
    dps = mp.mp.dps
    yield
    mp.mp.dps = dps


@pytest.fixture(scope="session")
def tau1000():
    return tau_of_t(1000, 50)


@pytest.fixture(scope="session")
def timed_t1000(tau1000):
    start = time.perf_counter()
    c = eval_components(tau1000, 50)
    return c, time.perf_counter() - start


@pytest.fixture(scope="session")
def components_t1000(timed_t1000):
    return timed_t1000[0]


@pytest.fixture(scope="session")
def components_tau001():
    with mp.workdps(70):
        tau = mp.mpf(1) / 100
    return eval_components(tau, 50)


@pytest.fixture(scope="session")
def convergence_components():
    """Contour components at tau = 0.08, 0.04, 0.02 (30 digits) for rate checks."""
    out = {}
    for s in ("0.08", "0.04", "0.02"):
        with mp.workdps(80):
            tau = mp.mpf(s)
        out[s] = (tau, eval_components(tau, 30))
    return out
