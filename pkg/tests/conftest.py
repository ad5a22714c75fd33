import pytest

from biconed.biconing import bicone
from biconed.graph import Multigraph

# Six-edge K4 with a bipartition into {1, 2} and {1b, 2b}; ids 0..5 are a..f.
EX_VERTICES = [1, 2, "1b", "2b"]
EX_EDGES = [(1, "1b"), (1, 2), (1, "2b"), ("1b", 2), ("1b", "2b"), (2, "2b")]
EX_ALIAS = dict(zip(range(6), "abcdef"))

# Twelve-vertex example: A = 1..6, complement 1b..5b, B = {1, 2} plus the complement.
BIG_A = [1, 2, 3, 4, 5, 6]
BIG_ABAR = ["1b", "2b", "3b", "4b", "5b"]
BIG_EDGES = [
    (1, "1b"), (1, 2), (2, "5b"), (3, "1b"), (3, "5b"), (4, "4b"), (5, 6),
    (6, "5b"), ("1b", "2b"), ("3b", "4b"), (1, "3b"), (5, "4b"), (2, "1b"),
]  # fmt: skip
BIG_TREE = [
    ("0", 2), ("0", 3), ("0", 6), ("0b", "2b"), ("0b", "4b"), ("1b", 2),
    (4, "4b"), (6, "5b"), (5, "4b"), ("1b", "2b"), ("3b", "4b"), ("0b", 1),
]  # fmt: skip


def edge_id(g, u, v):
    hits = [e.id for e in g.edges if {e.u, e.v} == {u, v}]
    assert len(hits) == 1, (u, v, hits)
    return hits[0]


@pytest.fixture(scope="session")
def ex_bg():
    return bicone(Multigraph(EX_VERTICES, EX_EDGES), [1, 2], ["1b", "2b"])


@pytest.fixture(scope="session")
def big_bg():
    g = Multigraph(BIG_A + BIG_ABAR, BIG_EDGES)
    return bicone(g, BIG_A, [1, 2] + BIG_ABAR)


@pytest.fixture(scope="session")
def big_tree(big_bg):
    return frozenset(edge_id(big_bg.full, u, v) for u, v in BIG_TREE)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
