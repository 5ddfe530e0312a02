import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from topodd.su2 import Unitary2

ACCEPTANCE_RESULTS = []


def random_unitary(rng) -> Unitary2:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return Unitary2(complex(v[0], v[1]), complex(v[2], v[3]))


@pytest.fixture
def rng():
    return np.random.default_rng(20251016)


angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False)


@st.composite
def unitaries(draw):
    theta = draw(st.floats(0, math.pi / 2))
    alpha = draw(angles)
    beta = draw(angles)
    return Unitary2(math.cos(theta) * cmath.exp(1j * alpha), math.sin(theta) * cmath.exp(1j * beta))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
