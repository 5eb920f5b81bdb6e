"""Shared random-instance generators for the test suite."""

import numpy as np

from hyperprop import build_hypergraph


def bernoulli_hypergraph(rng, max_nodes=50, max_edges=30, p=0.2):
    """Random hypergraph: each (node, edge) incidence drawn iid with prob p.

    Edges that draw no members simply do not exist; every node of the
    universe exists, so isolated nodes are common.  Always yields at least
    one incidence pair.
    """
    n = int(rng.integers(2, max_nodes + 1))
    m = int(rng.integers(1, max_edges + 1))
    rows, cols = (rng.random((n, m)) < p).nonzero()
    pairs = list(zip(rows.tolist(), cols.tolist()))
    if not pairs:
        pairs = [(0, 0)]
    h, _ = build_hypergraph(pairs, node_universe=range(n))
    return h


def random_signal(rng, n_rows, max_cols=4):
    d = int(rng.integers(1, max_cols + 1))
    return rng.normal(size=(n_rows, d))


def ordinary_graph(rng, max_nodes=30, extra_edges=20):
    """Random simple graph encoded as degree-2 hyperedges, no isolated nodes.

    A path over all nodes guarantees positive degree everywhere; extra
    distinct edges are sprinkled on top.  Returns the hypergraph plus the
    dense simple-graph adjacency matrix.
    """
    n = int(rng.integers(3, max_nodes + 1))
    edges = {(i, i + 1) for i in range(n - 1)}
    for _ in range(extra_edges):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            edges.add((min(int(i), int(j)), max(int(i), int(j))))
    pairs = []
    for e, (i, j) in enumerate(sorted(edges)):
        pairs.append((i, e))
        pairs.append((j, e))
    h, _ = build_hypergraph(pairs, node_universe=range(n))
    adjacency = np.zeros((n, n))
    for i, j in edges:
        adjacency[i, j] = adjacency[j, i] = 1.0
    return h, adjacency
