import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "conflat", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("conflat")


@pytest.fixture
def rng():
    return np.random.default_rng(0xC1F0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import SUMMARY
    except ImportError:
        return
    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in SUMMARY:
            terminalreporter.write_line(line)
