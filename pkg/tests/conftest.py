import json
from pathlib import Path

import pytest

from rigicount.graphs import Graph
from rigicount.solver import SolverConfig

DATA = Path(__file__).parent / "data"

# 7-vertex rigid graph with one extra edge; deleting {1,2} breaks rigidity and
# leaves a K4 block plus five single edges.  Plane count 12, sphere count 16.
OVERBRACED7 = Graph.from_edges(
    7,
    [(a - 1, b - 1) for a, b in [
        (1, 2), (1, 3), (1, 7), (2, 3), (2, 6), (3, 5),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
    ]],
)

# OVERBRACED7 minus {5,7}: minimally rigid, plane count 24, sphere count 32.
SPANNING7 = OVERBRACED7.remove_edge(4, 6)

# 11-vertex rigid graph built from OVERBRACED7 (on vertices 1..7) with a
# triangle hung below and two connecting paths; plane count 336.
TOWER11 = Graph.from_edges(
    11,
    [(a - 1, b - 1) for a, b in [
        (1, 2), (1, 3), (2, 3), (2, 6), (3, 5), (1, 7),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (5, 10), (6, 7), (7, 11),
        (4, 8), (4, 9), (8, 9), (8, 10), (9, 11), (10, 11),
    ]],
)

# two triangles joined by a perfect matching; minimally rigid with the largest
# plane count (12) among 6-vertex minimally rigid graphs
PRISM6 = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)])

K33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])


@pytest.fixture(scope="session")
def cfg():
    return SolverConfig()


@pytest.fixture(scope="session")
def base_table():
    """Frozen plane/sphere counts for all minimally rigid graphs on <= 7 vertices."""
    path = DATA / "base_counts.json"
    return json.loads(path.read_text())


@pytest.fixture(scope="session")
def table_oracle(base_table):
    """Lookup-table base oracle: lets the recursion run without the solver."""
    from rigicount.graphs import canonical_form
    from rigicount.solver import Mode

    def oracle(g, mode, cfg_unused=None):
        entry = base_table[canonical_form(g).hex()]
        return entry["plane" if mode is Mode.PLANE else "sphere"]

    return oracle


@pytest.fixture(scope="session")
def shared_memo():
    """One memo shared across count-heavy tests to avoid repeated solves."""
    return {}
