"""Shared helpers for the test suite.

networkx is used throughout the tests as an independent cross-validation
oracle (connectivity, bipartiteness, isomorphism, graph6); the package under
test never imports it.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from visualraag.graphs import Graph, bit_list, bits


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_int_edges(len(nodes), [(pos[u], pos[w]) for u, w in h.edges()])


def cycle_graph(n: int) -> Graph:
    return Graph.from_int_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_int_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_int_edges(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_int_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def square() -> Graph:
    """The 4-cycle a-c-b-d with diagonals {a,b} and {c,d}."""
    return Graph.from_edges("acbd", [("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_int_edges(n, edges)


def random_triangle_free(rng: random.Random, n: int, tries: int = 3 * 10**3) -> Graph:
    """Random maximal-ish triangle-free graph by edge insertion with rejection."""
    adj = [0] * n
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    budget = rng.randint(n, max(n, n * (n - 1) // 3))
    added = 0
    for i, j in pairs:
        if added >= budget:
            break
        if adj[i] & adj[j]:
            continue
        if rng.random() < 0.7:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            added += 1
    return Graph([str(i) for i in range(n)], adj)


def brute_force_induced_cycles(g: Graph) -> set[frozenset[int]]:
    """Vertex sets of chordless cycles, by checking every vertex subset."""
    out = set()
    for r in range(3, g.n + 1):
        for subset in itertools.combinations(range(g.n), r):
            sub = bits(subset)
            if all(bin(g.adj[v] & sub).count("1") == 2 for v in subset) and g.is_connected_mask(sub):
                out.add(frozenset(subset))
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
