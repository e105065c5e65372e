import cmath
import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mobsym.sphere import MobiusMap

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

W3 = cmath.exp(2j * math.pi / 3)
W5 = cmath.exp(2j * math.pi / 5)

coord = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, coord, coord)


@st.composite
def mobius_maps(draw, max_cond=20.0):
    """Random well-conditioned Mobius maps."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if np.linalg.cond(m) < max_cond:
            return MobiusMap(m)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
