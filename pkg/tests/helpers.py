import numpy as np

from cliquerich.graph import Graph


def random_graph(rng, n, p, weighted=False, max_weight=9):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    weights = None
    if weighted:
        weights = rng.integers(1, max_weight + 1, len(edges)).astype(float).tolist()
    return Graph(n, edges, weights)


def complete_graph(n, weight=1.0):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph(n, edges, [weight] * len(edges))


def two_k6_with_chaff(chaff=20):
    edges = []
    for base in (0, 6):
        edges += [(base + i, base + j) for i in range(6) for j in range(i + 1, 6)]
    return Graph(12 + chaff, edges)
