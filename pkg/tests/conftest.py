import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from polyplex.tensor import BinaryTensor

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def tensors(draw, d=st.integers(2, 3), n=st.integers(1, 3)):
    d, n = draw(d), draw(n)
    bits = draw(st.lists(st.integers(0, 1), min_size=n ** d, max_size=n ** d))
    return BinaryTensor.from_bits(d, n, bits)


def brute_canonical(A: BinaryTensor) -> bytes:
    """Lex-min bit string over the whole group (hyperplane and direction permutations)."""
    best = None
    a = A.array
    for perms in itertools.product(itertools.permutations(range(A.n)), repeat=A.d):
        b = a[np.ix_(*perms)]
        for axes in itertools.permutations(range(A.d)):
            key = np.transpose(b, axes).tobytes()
            if best is None or key < best:
                best = key
    return best


def brute_max_polyplex_value(A: BinaryTensor) -> Fraction:
    """Vertex enumeration of the polyplex polytope (tiny instances only)."""
    from oracles import vertex_enumeration_max
    from polyplex.matching import polyplex_problem
    prob, cells = polyplex_problem(A)
    if not cells:
        return Fraction(0)
    return vertex_enumeration_max(prob)


@pytest.fixture(scope="session")
def fixtures():
    from polyplex.search import load_fixtures
    return {f.name: f for f in load_fixtures()}


@pytest.fixture(scope="session")
def core(fixtures):
    return [f for f in fixtures.values() if f.kind == "core"]


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
