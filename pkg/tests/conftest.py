import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from sparkkit import RationalMatrix  # noqa: E402
from sparkkit.graphs import Graph  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

EXAMPLE1 = [[1, 1, 0, 0], [1, 1, 0, 1], [0, 0, 1, 1]]


@pytest.fixture
def example1():
    return RationalMatrix(EXAMPLE1)


small_rationals = st.builds(
    Fraction,
    st.integers(-4, 4),
    st.sampled_from([1, 1, 1, 2, 3]),
)


@st.composite
def matrices(draw, max_m=4, max_n=5, min_n=1, entries=small_rationals, nonzero=False):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m))
    M = RationalMatrix(rows)
    if nonzero and M.is_zero():
        rows[0][0] = Fraction(1)
        M = RationalMatrix(rows)
    return M


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
