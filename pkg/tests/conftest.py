import numpy as np
import pytest
from hypothesis import settings

from bdris.oracles import make_rng

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def unit_columns(rng, n, k=2):
    m = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    return m / np.linalg.norm(m, axis=0)


@pytest.fixture
def rng():
    return make_rng(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
