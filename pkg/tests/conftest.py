import warnings

import pytest

from maniforge import constructions as C

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cube():
    return C.regular_polytope([4, 3])


@pytest.fixture(scope="session")
def tetrahedron():
    return C.regular_polytope([3, 3])


@pytest.fixture(scope="session")
def octahedron():
    return C.regular_polytope([3, 4])


@pytest.fixture(scope="session")
def torus():
    return C.chiral_torus_4_4_1_2()


@pytest.fixture(scope="session")
def example():
    return C.example_4_20()


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
