import networkx as nx
import pytest

from sbsim.graph import DirectedGraph, Graph, GraphError


def test_path_and_cycle():
    p = Graph.path(5)
    assert p.is_path() and not p.is_cycle()
    assert p.edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert p.path_order() == [0, 1, 2, 3, 4]
    c = Graph.cycle(6)
    assert c.is_cycle() and not c.is_path()
    assert sorted(c.cycle_order()) == list(range(6))
    assert Graph.path(1).is_path()


def test_path_order_follows_edges():
    g = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    order = g.path_order()
    assert order == [1, 3, 0, 2]


@pytest.mark.parametrize(
    "edges",
    [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]],
)
def test_bad_edges(edges):
    with pytest.raises(GraphError):
        Graph.from_edges(3, edges)


def test_disconnected():
    with pytest.raises(GraphError):
        Graph.from_edges(4, [(0, 1), (2, 3)])


def test_degrees_agree_with_networkx():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    ref = nx.Graph(g.edges())
    assert g.degrees() == [ref.degree(v) for v in range(6)]
    assert g.edge_count == ref.number_of_edges()
    assert g.max_degree() == 3


def test_directed_graph_checks():
    dg = DirectedGraph(3, ((1, 0), (2, 0)))
    assert dg.degree_table() == [(2, 0), (0, 1), (0, 1)]
    assert dg.is_binary_pseudotree()
    assert not DirectedGraph(2, ((0, 1),)).is_binary_pseudotree()
    with pytest.raises(GraphError):
        DirectedGraph(2, ((0, 1), (1, 0)))
    with pytest.raises(GraphError):
        DirectedGraph(3, ((0, 1),))
