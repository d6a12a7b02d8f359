import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nilsym import LieAlgebra
from nilsym.catalog import heisenberg
from nilsym.oracle import random_two_step

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def h3() -> LieAlgebra:
    return heisenberg(1)


@st.composite
def two_step_algebras(draw, max_dim: int = 6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_two_step(random.Random(seed), max_dim)


@st.composite
def bracket_tables(draw, max_dim: int = 4):
    """Arbitrary antisymmetric tables; Jacobi may or may not hold."""
    n = draw(st.integers(2, max_dim))
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            vec = {k: Fraction(draw(st.integers(-1, 1))) for k in range(n)}
            vec = {k: c for k, c in vec.items() if c}
            if vec:
                table[(i, j)] = vec
    return LieAlgebra(n, table)


@st.composite
def skew_matrices(draw, n: int, bound: int = 3):
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = Fraction(draw(st.integers(-bound, bound)))
            a[i][j], a[j][i] = c, -c
    return a


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
