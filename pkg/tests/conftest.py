import random

import pytest

from tamewitt.padic import Eisenstein, Involution, Unramified, extend, involutions, make_field


def nontrivial(field):
    return next(s for s in involutions(field) if not s.is_trivial)


@pytest.fixture(scope="session")
def Q3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def Q5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def R3(Q3):
    """Q3(sqrt 3) with its nontrivial involution."""
    E = extend(Q3, Eisenstein(2, 1))
    return E, nontrivial(E)


@pytest.fixture(scope="session")
def U3(Q3):
    """The unramified quadratic extension of Q3 with Frobenius."""
    E = extend(Q3, Unramified(2))
    return E, nontrivial(E)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def identity():
    return Involution.identity


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance table (if it ran) after the test summary."""
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
