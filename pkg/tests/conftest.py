import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ebxii.dist import EBXII
from reference_values import ROWS, row_params

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

VARIANTS = ("g0", "g1", "g2", "g3")


def reference_dist(variant, b, c) -> EBXII:
    return EBXII.from_params(variant, **row_params(variant, b, c))


@pytest.fixture(params=[(v, b, c) for v in VARIANTS for b, c in ROWS], ids=lambda t: f"{t[0]}-b{t[1]}-c{t[2]}")
def ref_row(request):
    return request.param


@pytest.fixture
def strengths():
    from ebxii.data import dataset

    return dataset("strengths").to_numpy()


@pytest.fixture
def strengths51():
    from ebxii.data import dataset

    return dataset("strengths51").to_numpy()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance lines collected by test_acceptance.py and shown after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
