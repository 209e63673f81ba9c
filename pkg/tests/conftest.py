import numpy as np
import pytest
from hypothesis import settings

from curves import G1_LAMBDAS, G2_LAMBDAS
from telescurve.numerics.verify import NumericSetup

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def g1():
    return NumericSetup.build([2, 3], G1_LAMBDAS, seed=0)


@pytest.fixture(scope="session")
def g2():
    return NumericSetup.build([2, 5], G2_LAMBDAS, seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n = mark.args[0]
    ok = rep.passed if rep.when == "call" else False
    _CRITERIA[n] = _CRITERIA.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
