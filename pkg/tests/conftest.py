import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from circuitflow.graph import (
    DampingConfig,
    build_wc_transmission,
    load_edge_list,
)

# Three-node chain-with-shortcut fixture: 1 -> 2, 1 -> 3, 2 -> 3, unit
# weights.  Under weighted-cascade normalization node 2's single in-arc gets
# strength 1 and node 3's two in-arcs get 0.5 each.
G3_TEXT = "1 2\n1 3\n2 3\n"
# Same graph plus the cycle-closing arc 3 -> 1 (strength 1: it is node 1's
# only in-arc).
G3C_TEXT = "1 2\n1 3\n2 3\n3 1\n"


@pytest.fixture(scope="session")
def g3_graph():
    return load_edge_list(G3_TEXT, directed=True)


@pytest.fixture(scope="session")
def g3_tm(g3_graph):
    return build_wc_transmission(g3_graph)


@pytest.fixture(scope="session")
def g3c_graph():
    return load_edge_list(G3C_TEXT, directed=True)


@pytest.fixture(scope="session")
def g3c_tm(g3c_graph):
    return build_wc_transmission(g3c_graph)


@pytest.fixture(scope="session")
def lam3():
    return DampingConfig.uniform(3, 0.2)


def assert_vec(actual, expected, tol=1e-9):
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    assert actual.shape == expected.shape
    assert np.max(np.abs(actual - expected)) <= tol, (actual, expected)
