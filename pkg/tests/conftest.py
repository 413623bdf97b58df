import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from narhoop.core import FiniteMagma
from narhoop.suite import builtin_fixtures, verification_corpus


@pytest.fixture(scope="session")
def fixtures():
    return builtin_fixtures()


@pytest.fixture(scope="session")
def corpus3():
    """Every model of every class up to size 3, plus the fixtures."""
    return verification_corpus(3)


@st.composite
def magmas(draw, max_size=3):
    n = draw(st.integers(1, max_size))
    cells = st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)
    mul = np.array(draw(cells)).reshape(n, n)
    div = np.array(draw(cells)).reshape(n, n)
    return FiniteMagma(n, mul, div)


@st.composite
def permuted(draw, m):
    return m.relabel(draw(st.permutations(range(m.size))))


# -- a plain-loop reference, deliberately sharing no code with the library ----

def ref_meet(m, a, b):
    return int(m.mul[m.div[a][b]][b])


def ref_leq(m, a, b):
    return a == ref_meet(m, b, a)


def ref_is_narhoop(m):
    n = m.size
    for a, b in itertools.product(range(n), repeat=2):
        ab = ref_meet(m, a, b)
        if ref_meet(m, ab, a) != ab:
            return False
        if not ref_leq(m, a, int(m.div[m.mul[a][b]][b])):
            return False
        for c in range(n):
            if not ref_leq(m, int(m.mul[ab][c]), int(m.mul[a][c])):
                return False
            if not ref_leq(m, int(m.div[ab][c]), int(m.div[a][c])):
                return False
    return True


def ref_is_rres(m):
    n = m.size
    r = range(n)
    for a in r:
        if not ref_leq(m, a, a):
            return False
    for a, b in itertools.product(r, repeat=2):
        if a != b and ref_leq(m, a, b) and ref_leq(m, b, a):
            return False
    for a, b, c in itertools.product(r, repeat=3):
        if ref_leq(m, a, b) and ref_leq(m, b, c) and not ref_leq(m, a, c):
            return False
        if ref_leq(m, int(m.mul[a][b]), c) != ref_leq(m, a, int(m.div[c][b])):
            return False
    return True


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
