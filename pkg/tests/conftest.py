from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from linrig.matrix import Matrix

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []

small_ints = st.integers(min_value=-7, max_value=7)
nonzero_ints = small_ints.filter(bool)
rationals = st.builds(Fraction, small_ints, nonzero_ints)


@st.composite
def rational_matrices(draw, min_n=1, max_n=5, square=True):
    n = draw(st.integers(min_n, max_n))
    m = n if square else draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(rationals, min_size=m, max_size=m), min_size=n, max_size=n))
    return Matrix(rows)


@st.composite
def low_rank_matrices(draw, max_n=5):
    """Products of n x r and r x n integer matrices."""
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(0, n))
    C = draw(st.lists(st.lists(small_ints, min_size=r, max_size=r), min_size=n, max_size=n))
    D = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=r, max_size=r))
    rows = [[sum(C[a][k] * D[k][b] for k in range(r)) for b in range(n)] for a in range(n)]
    return Matrix(rows), r


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
