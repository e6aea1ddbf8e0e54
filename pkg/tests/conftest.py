"""Shared graph builders and seeded corpora for the test suite."""

from __future__ import annotations

from scycle import Graph, SplitMix64


def triangle() -> Graph:
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def k4() -> Graph:
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def c6() -> Graph:
    return Graph(6, [(i, (i + 1) % 6) for i in range(6)])


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]          # outer 5-cycle
    edges += [(i, i + 5) for i in range(5)]               # spokes
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)] # inner pentagram
    return Graph(10, edges)


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def two_k7() -> Graph:
    """Two disjoint copies of the complete graph on 7 vertices."""
    edges = []
    for base in (0, 7):
        edges += [(base + i, base + j) for i in range(7) for j in range(i + 1, 7)]
    return Graph(14, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gnp_edges(n: int, p: float, rng: SplitMix64) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)
            if rng.random() < p]


def random_instance(rng: SplitMix64, n_lo: int = 5, n_hi: int = 12,
                    k_hi: int = 3, ell_hi: int = 5):
    """One random (graph, terminals, k, ell) tuple. Density is drawn from
    a band wide enough to hit trees, sparse tangles and near-cliques."""
    n = n_lo + rng.below(n_hi - n_lo + 1)
    p = 0.1 + 0.4 * rng.random()
    g = Graph(n, gnp_edges(n, p, rng))
    k = 1 + rng.below(k_hi)
    ell = 1 + rng.below(ell_hi)
    t = 1 + rng.below(n)
    s = set(rng.sample(range(n), t))
    return g, s, k, ell


def corpus(seed: int, count: int, **kwargs):
    rng = SplitMix64(seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]
