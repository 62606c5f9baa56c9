import numpy as np
import pytest

from degen_kuramoto import (
    BudgetExceededError,
    CircuitLabelConflictError,
    EulerCircuit,
    Graph,
    OscillatorSystem,
    QuarterLabeling,
    admits_cde,
    check_mod4_circuit,
    circuit_to_phases,
    complete_bipartite_graph,
    complete_graph,
    construct_nonidentical_cde,
    cycle_graph,
    enumerate_cdes,
    glue_four_cycle,
    hypercube_graph,
    is_cde,
    is_cde_nonidentical,
    is_bipartite,
    is_eulerian,
    jacobian,
    phases_to_circuit,
)
from helpers import all_connected_graphs, brute_force_cdes, random_connected_graph

HALF_PI = np.pi / 2


def test_quarter_labeling_realization():
    q = QuarterLabeling((0, 1, 2, 3))
    assert np.allclose(q.phases(), [0, HALF_PI, np.pi, 3 * HALF_PI])
    assert QuarterLabeling((4, 5, -1), 0.0).labels == (0, 1, 3)
    shifted = QuarterLabeling((0, 1), base=0.25)
    assert np.allclose(shifted.phases(), [0.25, 0.25 + HALF_PI])


def test_euler_circuit_requires_closure():
    with pytest.raises(ValueError):
        EulerCircuit((0, 1, 2))
    assert EulerCircuit((0, 1, 0)).length == 2


def test_is_cde_examples():
    c4 = cycle_graph(4)
    assert is_cde(c4, [0, HALF_PI, np.pi, 3 * HALF_PI])
    verdict = is_cde(c4, np.zeros(4))
    assert not verdict and verdict.edge is not None
    c8 = cycle_graph(8)
    assert is_cde(c8, [k * HALF_PI for k in range(8)])
    # unbalanced vertex: every gap is +-pi/2 but the counts cannot split evenly
    path = Graph(3, [(0, 1), (1, 2)])
    verdict = is_cde(path, [HALF_PI, 0.0, HALF_PI])
    assert not verdict and verdict.vertex == 0 and verdict.edge is None
    assert "at -pi/2" in verdict.reason


def test_is_cde_nonidentical_examples():
    c4 = cycle_graph(4)
    sys_ = OscillatorSystem.identical(c4)
    verdict = is_cde_nonidentical(sys_, [0, HALF_PI, np.pi, 3 * HALF_PI])
    assert verdict and verdict.frequency_ratios == (0.0, 0.0, 0.0, 0.0)
    assert all(verdict.ratios_integral)

    star = complete_bipartite_graph(1, 3)
    theta = np.array([0.0, HALF_PI, HALF_PI, HALF_PI])
    good = OscillatorSystem(star, 1.0, [-3.0, 1.0, 1.0, 1.0])
    assert is_cde_nonidentical(good, theta)
    bad = OscillatorSystem.identical(star)
    verdict = is_cde_nonidentical(bad, theta)
    assert not verdict and verdict.vertex == 0


def test_is_cde_nonidentical_scales_with_coupling():
    star = complete_bipartite_graph(1, 3)
    theta = np.array([0.0, HALF_PI, HALF_PI, HALF_PI])
    sys_ = OscillatorSystem(star, 2.5, [-7.5, 2.5, 2.5, 2.5])
    verdict = is_cde_nonidentical(sys_, theta)
    assert verdict and verdict.frequency_ratios == (-3.0, 1.0, 1.0, 1.0)
    assert all(verdict.ratios_integral)


def test_enumerate_cdes_examples():
    assert [q.labels for q in enumerate_cdes(cycle_graph(4))] == [
        (0, 1, 2, 3),
        (0, 3, 2, 1),
    ]
    assert enumerate_cdes(complete_graph(3)) == []
    # Eulerian and bipartite, yet no CDE: the length-6 cycle
    c6 = cycle_graph(6)
    assert is_eulerian(c6) and is_bipartite(c6)
    assert enumerate_cdes(c6) == []


def test_enumerate_cdes_soundness():
    for g in [cycle_graph(4), cycle_graph(8), hypercube_graph(4),
              glue_four_cycle(cycle_graph(4), 0), complete_bipartite_graph(2, 4)]:
        sys_ = OscillatorSystem.identical(g)
        cdes = enumerate_cdes(g)
        assert cdes
        for q in cdes:
            theta = q.phases()
            assert is_cde(g, theta, tol=1e-12)
            assert np.abs(jacobian(sys_, theta)).max() < 1e-12


def test_enumerate_matches_brute_force_small_graphs():
    # every connected graph on up to 5 vertices, oracle = 4^(N-1) scan
    for n in range(2, 6):
        for g in all_connected_graphs(n):
            expected = sorted(brute_force_cdes(g))
            got = [q.labels for q in enumerate_cdes(g)]
            assert got == expected, f"mismatch on {g.edges}"


def test_enumerate_matches_brute_force_sampled():
    rng = np.random.default_rng(11)
    for _ in range(120):
        n = int(rng.integers(6, 8))
        g = random_connected_graph(n, 0.5, rng)
        assert [q.labels for q in enumerate_cdes(g)] == sorted(brute_force_cdes(g))


def test_enumerate_multi_component_product_and_edgeless():
    two_c4 = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    cdes = enumerate_cdes(two_c4)
    assert len(cdes) == 4  # 2 per component, combined by product
    for q in cdes:
        assert q.labels[0] == 0 and q.labels[4] == 0
        assert is_cde(two_c4, q.phases(), tol=1e-12)
    # isolated vertices are pinned to label 0
    c4_plus_isolated = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert [q.labels for q in enumerate_cdes(c4_plus_isolated)] == [
        (0, 1, 2, 3, 0),
        (0, 3, 2, 1, 0),
    ]
    assert [q.labels for q in enumerate_cdes(Graph(3))] == [(0, 0, 0)]


def test_enumerate_budget_is_a_distinct_error():
    with pytest.raises(BudgetExceededError):
        enumerate_cdes(hypercube_graph(4), budget=10)
    # small budgets still finish on small graphs
    assert len(enumerate_cdes(cycle_graph(4), budget=50)) == 2


def test_circuit_to_phases_examples():
    c4 = cycle_graph(4)
    q = circuit_to_phases(c4, EulerCircuit((0, 1, 2, 3, 0)))
    assert q.labels == (0, 1, 2, 3) and q.base == 0.0

    c8 = cycle_graph(8)
    q = circuit_to_phases(c8, EulerCircuit(tuple(range(8)) + (0,)))
    assert q.labels == (0, 1, 2, 3, 0, 1, 2, 3)

    c6 = cycle_graph(6)
    with pytest.raises(CircuitLabelConflictError) as info:
        circuit_to_phases(c6, EulerCircuit(tuple(range(6)) + (0,)))
    assert info.value.vertex == 0
    assert (info.value.first_index, info.value.second_index) == (0, 6)


def test_circuit_to_phases_validates_circuit():
    c4 = cycle_graph(4)
    with pytest.raises(ValueError, match="not an edge"):
        circuit_to_phases(c4, EulerCircuit((0, 2, 0)))
    with pytest.raises(ValueError, match="exactly once"):
        circuit_to_phases(c4, EulerCircuit((0, 1, 0)))


def test_phases_to_circuit_examples():
    c4 = cycle_graph(4)
    circuit = phases_to_circuit(c4, QuarterLabeling((0, 1, 2, 3)))
    assert circuit.vertices == (0, 1, 2, 3, 0)

    q4 = hypercube_graph(4)
    for q in enumerate_cdes(q4):
        circuit = phases_to_circuit(q4, q)
        assert circuit.length == 32
        assert check_mod4_circuit(circuit)

    glued = glue_four_cycle(cycle_graph(4), 0)
    for q in enumerate_cdes(glued):
        circuit = phases_to_circuit(glued, q)
        assert circuit.length == 8
        visits = [i for i, v in enumerate(circuit.vertices[:-1]) if v == 0]
        assert len(visits) == 2 and (visits[1] - visits[0]) % 4 == 0
        assert check_mod4_circuit(circuit)


def test_phases_to_circuit_rejects_bad_input():
    c4 = cycle_graph(4)
    with pytest.raises(ValueError, match="not a completely degenerate"):
        phases_to_circuit(c4, QuarterLabeling((0, 0, 0, 0)))
    with pytest.raises(ValueError, match="connected"):
        phases_to_circuit(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0)]),
                          QuarterLabeling((0, 1, 2, 3, 0)))
    with pytest.raises(ValueError, match="no edges"):
        phases_to_circuit(Graph(2), QuarterLabeling((0, 0)))


def test_check_mod4_circuit():
    assert check_mod4_circuit(EulerCircuit((0, 1, 2, 3, 0)))
    verdict = check_mod4_circuit(EulerCircuit((0, 1, 2, 3, 4, 5, 0)))
    assert not verdict and verdict.vertex == 0 and verdict.positions == (0, 6)


def test_roundtrip_on_enumerated_cdes():
    rng = np.random.default_rng(13)
    graphs = [cycle_graph(4), cycle_graph(8), cycle_graph(12),
              glue_four_cycle(cycle_graph(4), 0), complete_bipartite_graph(2, 4),
              hypercube_graph(4)]
    for _ in range(60):
        graphs.append(random_connected_graph(int(rng.integers(4, 9)), 0.5, rng))
    for g in graphs:
        for q in enumerate_cdes(g):
            circuit = phases_to_circuit(g, q)
            assert check_mod4_circuit(circuit)
            assert circuit_to_phases(g, circuit, q.base).labels == q.labels


def test_construct_nonidentical_examples():
    edge = Graph(2, [(0, 1)])
    res = construct_nonidentical_cde(edge, coupling=1.0)
    assert res
    assert np.allclose(res.phases, [0.0, HALF_PI])
    assert np.allclose(res.frequencies, [-1.0, 1.0])

    res = construct_nonidentical_cde(complete_graph(3))
    assert not res and len(res.odd_cycle) == 3

    res = construct_nonidentical_cde(cycle_graph(4), coupling=2.0)
    assert np.allclose(res.phases, [0.0, HALF_PI, 0.0, HALF_PI])
    assert np.allclose(res.frequencies, [-4.0, 4.0, -4.0, 4.0])


def test_construct_nonidentical_satisfies_equilibrium_conditions():
    rng = np.random.default_rng(17)
    from helpers import random_bipartite_graph

    for _ in range(40):
        g = random_bipartite_graph(int(rng.integers(2, 12)), rng)
        k = float(rng.uniform(0.5, 4.0))
        res = construct_nonidentical_cde(g, coupling=k)
        assert res
        sys_ = OscillatorSystem(g, k, res.frequencies)
        verdict = is_cde_nonidentical(sys_, res.phases, tol=1e-12)
        assert verdict and all(verdict.ratios_integral)


def test_admits_cde_examples():
    rep = admits_cde(complete_graph(3))
    assert not rep and rep.decided_by == "triangle"
    rep = admits_cde(cycle_graph(4))
    assert rep and rep.decided_by == "enumeration"
    rep = admits_cde(cycle_graph(6))
    assert not rep and rep.decided_by == "enumeration"
    rep = admits_cde(Graph(3, [(0, 1), (1, 2)]))
    assert not rep and rep.decided_by == "odd-degree" and rep.odd_degree_vertex == 0
    rep = admits_cde(cycle_graph(5))
    assert not rep and rep.decided_by == "non-bipartite"
    rep = admits_cde(Graph(4))
    assert rep and rep.edgeless and rep.decided_by == "edgeless"


def test_admits_cde_necessity_on_random_graphs():
    rng = np.random.default_rng(19)
    from helpers import random_graph

    for _ in range(300):
        g = random_graph(int(rng.integers(2, 10)), float(rng.choice([0.2, 0.5])), rng)
        rep = admits_cde(g)
        if rep.admits and not rep.edgeless:
            assert is_eulerian(g)
            assert is_bipartite(g)


def test_glued_extension_stays_cde():
    # any CDE extends over a glued 4-cycle with labels l+1, l+2, l+3
    graphs = [cycle_graph(4), cycle_graph(8), complete_bipartite_graph(2, 4)]
    for g in graphs:
        for q in enumerate_cdes(g):
            for k in range(g.vertex_count):
                glued = glue_four_cycle(g, k)
                l = q.labels[k]
                extended = QuarterLabeling(q.labels + (l + 1, l + 2, l + 3))
                assert is_cde(glued, extended.phases(), tol=1e-12)
