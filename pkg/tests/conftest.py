import numpy as np
import pytest
from hypothesis import strategies as st

from abflux import make_cylinder

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def cylinder_states(draw, max_size=8, j_range=(-6, 6)):
    n = draw(st.integers(1, max_size))
    j_min = draw(st.integers(*j_range))
    re = draw(st.lists(finite, min_size=n, max_size=n))
    im = draw(st.lists(finite, min_size=n, max_size=n))
    amps = np.array(re) + 1j * np.array(im)
    if np.linalg.norm(amps) < 1e-3:
        amps[0] = 1.0
    return make_cylinder(j_min, amps)


@pytest.fixture
def rng():
    return np.random.default_rng(8675309)


@pytest.fixture
def worked_pair():
    """Pre (|0>+|1>)/sqrt2 and post (|0>+i|1>)/sqrt2."""
    return make_cylinder(0, [1, 1]), make_cylinder(0, [1, 1j])


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; printed after the run."""

    def _record(number, ok, detail):
        _ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
