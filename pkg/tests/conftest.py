import pytest

from drscode.construct import build
from drscode.gf import field
from drscode.sman import SmanTopology

# Three sources, seven relays; column j is relay j.
EXAMPLE_ADJACENCY = [
    [1, 0, 0, 1, 1, 1, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [0, 1, 1, 1, 1, 0, 0],
]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gf8():
    return field(3, 0b1011)


@pytest.fixture(scope="session")
def example_topology():
    return SmanTopology((3, 1, 1), 1, EXAMPLE_ADJACENCY)


@pytest.fixture(scope="session")
def example_code(example_topology, gf8):
    return build(example_topology, gf8)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
