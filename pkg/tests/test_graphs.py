import numpy as np
import pytest

from degen_kuramoto import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    contains_triangle,
    cycle_graph,
    erdos_renyi,
    glue_four_cycle,
    hypercube_graph,
    is_bipartite,
    is_eulerian,
)


def test_graph_normalizes_and_validates():
    g = Graph(4, [(1, 0), (0, 1), (2, 3)])
    assert g.edges == ((0, 1), (2, 3))
    assert g.edge_count == 2
    with pytest.raises(ValueError, match="self-loop"):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError, match="outside"):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_degree():
    c4 = cycle_graph(4)
    assert all(c4.degree(k) == 2 for k in range(4))
    assert Graph(3).degree(0) == 0
    q4 = hypercube_graph(4)
    assert all(q4.degree(k) == 4 for k in range(16))
    with pytest.raises(ValueError):
        c4.degree(4)


def test_connected_components():
    assert connected_components(cycle_graph(4)) == ((0, 1, 2, 3),)
    two_edges = Graph(4, [(0, 1), (2, 3)])
    assert connected_components(two_edges) == ((0, 1), (2, 3))
    assert connected_components(Graph(3)) == ((0,), (1,), (2,))


def test_is_bipartite_parts_and_witness():
    res = is_bipartite(cycle_graph(4))
    assert res and res.parts == ((0, 2), (1, 3))

    res = is_bipartite(complete_graph(3))
    assert not res
    cyc = res.odd_cycle
    assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
    g = complete_graph(3)
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert g.has_edge(a, b)

    # hypercube parts are exactly the bit-parity classes
    q4 = hypercube_graph(4)
    res = is_bipartite(q4)
    assert res
    even = tuple(v for v in range(16) if bin(v).count("1") % 2 == 0)
    assert res.parts[0] == even


@pytest.mark.parametrize("n", [5, 7, 9])
def test_odd_cycle_witness_on_odd_cycles(n):
    res = is_bipartite(cycle_graph(n))
    assert not res
    assert len(res.odd_cycle) == n


def test_is_eulerian():
    assert is_eulerian(cycle_graph(4))
    assert is_eulerian(cycle_graph(6))
    path3 = Graph(3, [(0, 1), (1, 2)])
    res = is_eulerian(path3)
    assert not res and res.odd_degree_vertex == 0
    # isolated vertices are harmless; separate edge components are not
    assert is_eulerian(Graph(5, [(0, 1), (1, 2), (2, 0)]))
    two_triangles = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    res = is_eulerian(two_triangles)
    assert not res and "components" in res.reason


def test_contains_triangle():
    assert contains_triangle(complete_graph(3)) == (0, 1, 2)
    assert contains_triangle(cycle_graph(4)) is None
    t = contains_triangle(complete_graph(4))
    assert t is not None and len(set(t)) == 3


def test_cycle_graph():
    c8 = cycle_graph(8)
    assert c8.vertex_count == 8 and c8.edge_count == 8
    assert all(c8.degree(k) == 2 for k in range(8))
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_hypercube_graph():
    assert hypercube_graph(2) == Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    for d in range(1, 6):
        g = hypercube_graph(d)
        assert g.vertex_count == 2**d
        assert g.edge_count == d * 2 ** (d - 1)
        assert all(g.degree(k) == d for k in range(g.vertex_count))
    with pytest.raises(ValueError):
        hypercube_graph(0)


def test_glue_four_cycle():
    c4 = cycle_graph(4)
    glued = glue_four_cycle(c4, 0)
    assert glued.vertex_count == 7 and glued.edge_count == 8
    assert set(c4.edges) <= set(glued.edges)
    assert glued.degree(0) == c4.degree(0) + 2
    for v in (4, 5, 6):
        assert glued.degree(v) == 2
    with pytest.raises(ValueError):
        glue_four_cycle(c4, 9)


def test_complete_bipartite_graph():
    k24 = complete_bipartite_graph(2, 4)
    assert k24.vertex_count == 6 and k24.edge_count == 8
    assert is_bipartite(k24)
    star = complete_bipartite_graph(1, 3)
    assert star.degree(0) == 3


def test_erdos_renyi_endpoints_and_reproducibility():
    assert erdos_renyi(5, 0.0, 1).edge_count == 0
    assert erdos_renyi(5, 1.0, 1) == complete_graph(5)
    a = erdos_renyi(12, 0.3, 42)
    b = erdos_renyi(12, 0.3, 42)
    assert a == b
    assert a != erdos_renyi(12, 0.3, 43)
    with pytest.raises(ValueError):
        erdos_renyi(5, 1.5, 0)


def test_erdos_renyi_edge_count_concentration():
    # binomial(190, 1/2): [60, 130] is a +-5 sigma window
    hits = sum(
        1 for seed in range(1000) if 60 <= erdos_renyi(20, 0.5, seed).edge_count <= 130
    )
    assert hits >= 990


def test_generator_structural_audit():
    graphs = [
        cycle_graph(5),
        hypercube_graph(3),
        glue_four_cycle(cycle_graph(4), 2),
        complete_graph(4),
        complete_bipartite_graph(2, 3),
        erdos_renyi(10, 0.4, 7),
    ]
    for g in graphs:
        a = g.adjacency_matrix()
        assert np.array_equal(a, a.T)
        assert not a.diagonal().any()
        # triangle result and bipartiteness must not contradict each other
        if contains_triangle(g) is not None:
            assert not is_bipartite(g)
