import random

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from visualraag.graphs import bits, has_separating_clique, is_incomplete, is_triangle_free
from visualraag.squares import CfsStatus, cfs_status, diagonal_graph, is_strongly_cfs, support
from visualraag.generators import bicycle_wheel

from conftest import (
    complete_bipartite,
    cycle_graph,
    path_graph,
    random_triangle_free,
    square,
    to_networkx,
)


def test_diagonal_graph_of_square():
    g = square()
    dg = diagonal_graph(g)
    assert len(dg.diagonals) == 2
    assert dg.graph.edge_count() == 1


def test_diagonal_graph_of_path_is_empty():
    assert diagonal_graph(path_graph(4)).diagonals == ()


def test_diagonal_graph_wheel_contains_hub_diagonals():
    g, _lam = bicycle_wheel(3)
    dg = diagonal_graph(g)
    x = g.vertex_id("x")
    for i in (1, 2, 3):
        d = g.vertex_id(f"d{i}")
        assert dg.index_of(x, d) is not None


def test_support():
    assert support([(0, 1), (1, 4)]) == {0, 1, 4}
    assert support([]) == set()
    g = square()
    dg = diagonal_graph(g)
    assert support(dg.diagonals) == {0, 1, 2, 3}


def test_cfs_status_examples():
    assert cfs_status(cycle_graph(6)).status is CfsStatus.NOT_CFS
    assert cfs_status(complete_bipartite(2, 3)).status is CfsStatus.STRONGLY_CFS
    dg = cfs_status(complete_bipartite(2, 3)).diagonal
    assert dg.graph.n == 4  # the pole pair plus three middle pairs
    assert dg.graph.edge_count() == 3  # a star
    g, _lam = bicycle_wheel(3)
    assert cfs_status(g).status is CfsStatus.STRONGLY_CFS


def test_cfs_star_is_not_cfs():
    star = complete_bipartite(1, 4)
    rep = cfs_status(star)
    assert rep.status is CfsStatus.NOT_CFS


def test_cfs_witness_component_has_full_support():
    g, _lam = bicycle_wheel(4)
    rep = cfs_status(g)
    assert rep.status is CfsStatus.STRONGLY_CFS
    pairs = [rep.diagonal.diagonals[i] for i in rep.witness_component]
    assert support(pairs) == set(range(g.n))


@given(st.integers(4, 9))
@settings(max_examples=60, deadline=None)
def test_diagonal_graph_triangle_free_when_host_is(n):
    g = random_triangle_free(random.Random(n * 23 + 1), n)
    dg = diagonal_graph(g)
    assert is_triangle_free(dg.graph)


@given(st.integers(4, 9))
@settings(max_examples=60, deadline=None)
def test_cfs_implies_no_separating_clique(n):
    g = random_triangle_free(random.Random(n * 31 + 7), n)
    if not (is_incomplete(g) and is_triangle_free(g)):
        return
    rep = cfs_status(g)
    if rep.status is not CfsStatus.NOT_CFS:
        assert not has_separating_clique(g)


@given(st.integers(4, 9))
@settings(max_examples=40, deadline=None)
def test_squares_match_networkx_4_cycles(n):
    g = random_triangle_free(random.Random(n * 41 + 3), n)
    dg = diagonal_graph(g)
    # every diagonal really is the diagonal of an induced square
    for a, b in dg.diagonals:
        assert not g.has_edge(a, b)
        common = [c for c in range(g.n) if g.has_edge(a, c) and g.has_edge(b, c)]
        assert any(
            not g.has_edge(c, d)
            for i, c in enumerate(common)
            for d in common[i + 1 :]
        )
    # and the edge relation matches an independent cycle scan
    nxg = to_networkx(g)
    squares = set()
    for cyc in nx.simple_cycles(nxg, length_bound=4):
        if len(cyc) == 4:
            a, c, b, d = cyc
            if not nxg.has_edge(a, b) and not nxg.has_edge(c, d):
                squares.add(frozenset((frozenset((a, b)), frozenset((c, d)))))
    dg_edges = {
        frozenset(
            (frozenset(dg.diagonals[i]), frozenset(dg.diagonals[j]))
        )
        for i, j in dg.graph.edges()
    }
    assert dg_edges == squares
