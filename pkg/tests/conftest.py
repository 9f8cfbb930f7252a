import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qplane.params import make_context

settings.register_profile(
    "qplane",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("qplane")


@pytest.fixture(scope="session")
def ctx():
    return make_context(0.15, 0.7)


@pytest.fixture(params=[(0.15, 0.7), (0.07, -1.3), (-0.21, 0.45)], ids=["default", "small-gamma", "negative-gamma"])
def any_ctx(request):
    return make_context(*request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
