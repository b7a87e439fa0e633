import pytest

from clusteratom.cluster import Quiver, enumerate_exchange_graph, quiver_to_matrix
from clusteratom.formats import standard_quiver

A2 = ((0, -1), (1, 0))
CYCLE3 = Quiver(3, ((0, 1), (1, 2), (2, 0)))


def dynkin(name):
    return quiver_to_matrix(standard_quiver(name))


@pytest.fixture(scope="session")
def graphs():
    """Exchange graphs shared across test modules, built on first use."""
    cache = {}

    def get(name):
        if name not in cache:
            B = quiver_to_matrix(CYCLE3) if name == "C3" else dynkin(name)
            cache[name] = enumerate_exchange_graph(B)
        return cache[name]

    return get
