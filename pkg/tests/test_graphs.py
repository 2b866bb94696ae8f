import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from consep.errors import InvalidGraph
from consep.graphs import Graph, LabeledGraph, girth, is_cut_vertex, to_dot
from oracles import multigraph_girth, simple_projection


def cycle(n):
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def test_girth_examples():
    assert girth(LabeledGraph(2, 1, ((0, 0, 1), (0, 0, 2)))) == 1
    assert girth(cycle(3)) == 3
    assert girth(Graph(4, ((0, 1), (1, 2), (1, 3)))) == math.inf
    assert girth(Graph(2, ((0, 1), (0, 1)))) == 2


@st.composite
def multigraphs(draw, max_vertices=6, max_edges=8):
    n = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return n, tuple(edges)


@given(multigraphs())
@settings(max_examples=150, deadline=None)
def test_girth_matches_edge_deletion_oracle(mg):
    n, edges = mg
    assert girth(Graph(n, edges)) == multigraph_girth(n, edges)


@given(multigraphs())
@settings(max_examples=150, deadline=None)
def test_cut_vertices_match_networkx(mg):
    n, edges = mg
    g = Graph(n, edges)
    nxg = simple_projection(n, edges)
    if not nx.is_connected(nxg):
        return
    arts = set(nx.articulation_points(nxg))
    assert {v for v in range(n) if is_cut_vertex(g, v)} == arts


def test_cut_vertex_examples():
    assert is_cut_vertex(Graph(3, ((0, 1), (1, 2))), 1)
    assert not any(is_cut_vertex(cycle(5), v) for v in range(5))
    # two loops at one vertex, each subdivided once: the wedge point separates them
    eight = Graph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))
    assert is_cut_vertex(eight, 0)


def test_labeled_graph_validation():
    with pytest.raises(InvalidGraph):
        LabeledGraph(2, 2, ((0, 2, 1),))
    with pytest.raises(InvalidGraph):
        LabeledGraph(2, 2, ((0, 1, 3),))
    with pytest.raises(InvalidGraph):
        Graph(1, ((0, 1),))


def test_darts_and_components():
    g = Graph(4, ((0, 1), (2, 3), (3, 3)))
    assert g.dart_tail(2) == 2 and g.dart_head(2) == 3 and g.dart_head(3) == 2
    assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3]]
    assert g.rank() == 1
    assert g.distances_from(0) == {0: 0, 1: 1}


def test_labeled_reading():
    g = LabeledGraph(2, 2, ((0, 1, 1), (1, 1, 2)))
    assert g.read(0, (1, 2, 2, -1)) == 0
    assert g.read(0, (2,)) is None
    assert g.is_folded() and not g.is_full()
    assert g.missing_labels(0) == [-1, 2, -2]


def test_dot_export():
    text = to_dot(LabeledGraph(2, 1, ((0, 0, 2),)), "R")
    assert text.startswith("digraph R {") and 'label="b"' in text
    assert "--" in to_dot(cycle(3))
