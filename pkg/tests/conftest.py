import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from uniform_lpt.model import Instance

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"

positive = st.floats(min_value=0.25, max_value=8.0, allow_nan=False, allow_infinity=False)


@st.composite
def instances(draw, max_m=4, max_n=7, identical=False):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    speeds = [1.0] * m if identical else draw(st.lists(positive, min_size=m, max_size=m))
    sizes = draw(st.lists(positive, min_size=n, max_size=n))
    return Instance.from_unsorted(speeds, sizes)


@st.composite
def integer_instances(draw, max_m=4, max_n=7):
    """Small integer data, so ties between tasks and processors are common."""
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    speeds = draw(st.lists(st.integers(1, 3), min_size=m, max_size=m))
    sizes = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    return Instance.from_unsorted(speeds, sizes)


scale_factors = st.sampled_from([0.5, 2.0, 4.0, 0.125, 1024.0])


@pytest.fixture
def graham():
    return Instance((1.0, 1.0), (3.0, 3.0, 2.0, 2.0, 2.0))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
