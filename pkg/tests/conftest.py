import numpy as np
import pytest

from motifexpect import Graph, Motif, TableDecoder, WeightedGraph


@pytest.fixture
def paper_graph():
    """Undirected 4-node graph: edges a-b and b-c, d isolated."""
    adj = np.zeros((4, 4), dtype=np.int8)
    adj[0, 1] = adj[1, 0] = 1
    adj[1, 2] = adj[2, 1] = 1
    return Graph(adj, directed=False, labels=("a", "b", "c", "d"))


@pytest.fixture
def paper_motif():
    """3-node template: edge between the first two positions, third isolated."""
    return Motif([[0, 1, 0], [1, 0, 0], [0, 0, 0]], directed=False)


@pytest.fixture
def edge_motif_directed():
    return Motif([[0, 1], [0, 0]], directed=True)


@pytest.fixture
def asym_weighted():
    """Directed 2-node model with link probabilities 0.3 and 0.6."""
    return WeightedGraph([[0.0, 0.3], [0.6, 0.0]], directed=True)


@pytest.fixture
def asym_decoder():
    return TableDecoder([[0.0, 0.3], [0.6, 0.0]], directed=True)


def random_weighted(rng, n, directed):
    probs = rng.random((n, n))
    if directed:
        np.fill_diagonal(probs, 0.0)
    else:
        probs = np.triu(probs, k=1)
        probs = probs + probs.T
    return WeightedGraph(probs, directed)


def random_binary(rng, n, directed, p=0.5):
    adj = (rng.random((n, n)) < p).astype(np.int8)
    if not directed:
        adj = np.triu(adj, k=1)
        adj = adj + adj.T
    np.fill_diagonal(adj, 0)
    return Graph(adj, directed)
