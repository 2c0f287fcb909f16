import pytest

from orbitspace import tolerance
from orbitspace.groups import modular_torus, octagon_genus2
from orbitspace.hyperbolic import parse_word

# 20 words of length <= 6 in the modular-torus group; (word, non-simple)
CORPUS = [
    ("a", False),
    ("b", False),
    ("ab", False),
    ("aB", False),
    ("aab", False),
    ("abb", False),
    ("aaB", False),
    ("aBB", False),
    ("aaab", False),
    ("abbb", False),
    ("aabab", False),
    ("abaab", False),
    ("aaaab", False),
    ("aabb", True),
    ("aaBB", True),
    ("abAb", True),
    ("abaB", True),
    ("aaabb", True),
    ("aabbb", True),
    ("aaaBBB", True),
]


@pytest.fixture(scope="session")
def torus():
    return modular_torus()


@pytest.fixture(scope="session")
def octagon():
    return octagon_genus2()


@pytest.fixture(scope="session")
def word(torus):
    def make(text, group=None):
        G = group or torus
        return G.element(parse_word(text, G.rank))

    return make


@pytest.fixture(autouse=True)
def _reset_tolerance():
    yield
    tolerance.set_eps(tolerance.DEFAULT_EPS)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
