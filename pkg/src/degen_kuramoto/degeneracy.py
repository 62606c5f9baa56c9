"""Completely degenerate equilibria (CDEs) as exact quarter-turn labelings.

An equilibrium has a zero Jacobian exactly when every edge holds a phase
difference of +-pi/2 and every vertex sees equally many +pi/2 and -pi/2
neighbors. On a connected graph such phases live on a lattice
base + label * pi/2 with labels in Z4, which this module manipulates
exactly: detection, exhaustive enumeration, the two-way correspondence
with Euler circuits whose revisit gaps are multiples of four, and the
bipartite construction for non-identical oscillators.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, connected_components, contains_triangle, is_bipartite
from .oscillator import HALF_PI, OscillatorSystem, phase_vector, signed_gap

__all__ = [
    "QuarterLabeling",
    "EulerCircuit",
    "CdeVerdict",
    "NonidenticalVerdict",
    "Mod4Verdict",
    "NonidenticalConstruction",
    "AdmitsReport",
    "BudgetExceededError",
    "CircuitLabelConflictError",
    "is_cde",
    "is_cde_nonidentical",
    "enumerate_cdes",
    "circuit_to_phases",
    "phases_to_circuit",
    "check_mod4_circuit",
    "construct_nonidentical_cde",
    "admits_cde",
]


@dataclass(frozen=True)
class QuarterLabeling:
    """Z4 labels per vertex plus a continuous base offset.

    Vertex k realizes the phase base + labels[k] * pi/2 (mod 2pi).
    """

    labels: tuple[int, ...]
    base: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(l) % 4 for l in self.labels))
        object.__setattr__(self, "base", float(self.base) % (4.0 * HALF_PI))

    def phases(self) -> np.ndarray:
        return phase_vector(self.base + HALF_PI * np.array(self.labels, dtype=float))

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class EulerCircuit:
    """Closed edge walk as a vertex sequence v_0, ..., v_M with v_M = v_0."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        if len(verts) < 2 or verts[0] != verts[-1]:
            raise ValueError("circuit must be a closed sequence (first = last)")
        object.__setattr__(self, "vertices", verts)

    @property
    def length(self) -> int:
        """Number of steps, equal to the edge count it traverses."""
        return len(self.vertices) - 1


@dataclass(frozen=True)
class CdeVerdict:
    ok: bool
    reason: str | None = None
    vertex: int | None = None
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class NonidenticalVerdict:
    ok: bool
    reason: str | None = None
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    frequency_ratios: tuple[float, ...] = ()
    ratios_integral: tuple[bool, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Mod4Verdict:
    ok: bool
    vertex: int | None = None
    positions: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


class BudgetExceededError(RuntimeError):
    """Enumeration search-node budget exhausted (distinct from an empty result)."""

    def __init__(self, budget: int):
        super().__init__(f"enumeration exceeded the search budget of {budget} nodes")
        self.budget = budget


class CircuitLabelConflictError(ValueError):
    """A circuit revisits a vertex after a step count that is not 0 mod 4."""

    def __init__(self, vertex: int, first_index: int, second_index: int):
        gap = second_index - first_index
        super().__init__(
            f"vertex {vertex} revisited after {gap} steps "
            f"(positions {first_index} and {second_index}; gap not a multiple of 4)"
        )
        self.vertex = vertex
        self.first_index = first_index
        self.second_index = second_index


def is_cde(g: Graph, theta, tol: float = 1.0e-9) -> CdeVerdict:
    """Check the zero-Jacobian equilibrium criterion vertex by vertex.

    Every neighbor of k must sit at theta_k +- pi/2 (within tol) and the
    two offsets must occur equally often.
    """
    theta = phase_vector(theta, g.vertex_count)
    for k in range(g.vertex_count):
        plus = minus = 0
        for j in g.neighbors(k):
            gap = signed_gap(theta[j], theta[k])
            if abs(gap - HALF_PI) <= tol:
                plus += 1
            elif abs(gap + HALF_PI) <= tol:
                minus += 1
            else:
                e = (k, j) if k < j else (j, k)
                return CdeVerdict(
                    False,
                    f"edge {e}: phase gap {gap:.6g} is not +-pi/2 within {tol:g}",
                    vertex=k,
                    edge=e,
                )
        if plus != minus:
            return CdeVerdict(
                False,
                f"vertex {k}: {plus} neighbors at +pi/2 vs {minus} at -pi/2",
                vertex=k,
            )
    return CdeVerdict(True)


def is_cde_nonidentical(
    sys: OscillatorSystem, theta, tol: float = 1.0e-9
) -> NonidenticalVerdict:
    """Zero-Jacobian check for coupling K and frequencies omega.

    Requires cos(theta_j - theta_k) = 0 on every edge and the per-vertex
    sine balance sum_j a_jk sin(theta_j - theta_k) = -omega_k / K. Also
    reports whether each ratio omega_k / K is an integer within tol.
    """
    g = sys.graph
    theta = phase_vector(theta, g.vertex_count)
    ratios = tuple(float(w) / sys.coupling for w in sys.frequencies)
    integral = tuple(abs(r - round(r)) <= tol for r in ratios)
    for u, v in g.edges:
        c = float(np.cos(theta[v] - theta[u]))
        if abs(c) > tol:
            return NonidenticalVerdict(
                False,
                f"edge ({u}, {v}): cos(phase gap) = {c:.6g} is not 0 within {tol:g}",
                edge=(u, v),
                frequency_ratios=ratios,
                ratios_integral=integral,
            )
    for k in range(g.vertex_count):
        s = sum(float(np.sin(theta[j] - theta[k])) for j in g.neighbors(k))
        if abs(s + ratios[k]) > tol:
            return NonidenticalVerdict(
                False,
                f"vertex {k}: sine sum {s:.6g} != -omega/K = {-ratios[k]:.6g}",
                vertex=k,
                frequency_ratios=ratios,
                ratios_integral=integral,
            )
    return NonidenticalVerdict(
        True, frequency_ratios=ratios, ratios_integral=integral
    )


def _component_labelings(g: Graph, comp, budget_state, limit=None):
    """Backtrack over Z4 labels of one edge-bearing component.

    The smallest vertex is pinned to 0; adjacent labels must differ by
    +-1 mod 4 and each vertex's +1 / -1 neighbor offsets may never exceed
    half its degree. Yields {vertex: label} dicts in deterministic order.
    """
    comp = sorted(comp)
    half = {}
    for v in comp:
        d = g.degree(v)
        if d % 2:
            return []
        half[v] = d // 2

    # BFS order gives every later vertex a labeled parent to branch from.
    root = comp[0]
    order = [root]
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in parent:
                parent[w] = v
                order.append(w)
                queue.append(w)

    labels = {v: -1 for v in comp}
    plus = {v: 0 for v in comp}
    minus = {v: 0 for v in comp}

    def place(v, lab):
        trail = []
        for u in g.neighbors(v):
            lu = labels[u]
            if lu < 0:
                continue
            off = (lab - lu) % 4
            if off == 1:
                plus[u] += 1
                minus[v] += 1
                trail.append((plus, u))
                trail.append((minus, v))
                if plus[u] > half[u] or minus[v] > half[v]:
                    unwind(trail)
                    return None
            elif off == 3:
                minus[u] += 1
                plus[v] += 1
                trail.append((minus, u))
                trail.append((plus, v))
                if minus[u] > half[u] or plus[v] > half[v]:
                    unwind(trail)
                    return None
            else:
                unwind(trail)
                return None
        labels[v] = lab
        return trail

    def unwind(trail):
        for counter, v in trail:
            counter[v] -= 1

    def search(i):
        if i == len(order):
            yield dict(labels)
            return
        v = order[i]
        if i == 0:
            candidates = (0,)
        else:
            base = labels[parent[v]]
            candidates = tuple(sorted(((base + 1) % 4, (base + 3) % 4)))
        for lab in candidates:
            budget_state[0] += 1
            if budget_state[0] > budget_state[1]:
                raise BudgetExceededError(budget_state[1])
            trail = place(v, lab)
            if trail is not None:
                yield from search(i + 1)
                labels[v] = -1
                unwind(trail)

    gen = search(0)
    if limit is None:
        return list(gen)
    return list(itertools.islice(gen, limit))


def enumerate_cdes(
    g: Graph, budget: int = 1_000_000, limit: int | None = None
) -> list[QuarterLabeling]:
    """All CDEs modulo global rotation, as quarter labelings with base 0.

    The smallest vertex of each edge-bearing component is pinned to label 0
    and component solutions combine by product; isolated vertices get
    label 0. Raises BudgetExceededError when the backtracking search visits
    more than `budget` nodes; an empty list means no CDE exists.
    """
    budget_state = [0, int(budget)]
    per_component = []
    for comp in connected_components(g):
        if any(g.degree(v) for v in comp):
            sols = _component_labelings(g, comp, budget_state, limit)
            if not sols:
                return []
            per_component.append(sols)

    results = []
    combos = itertools.product(*per_component) if per_component else iter([()])
    if limit is not None:
        combos = itertools.islice(combos, limit)
    for combo in combos:
        labels = [0] * g.vertex_count
        for sol in combo:
            for v, lab in sol.items():
                labels[v] = lab
        results.append(QuarterLabeling(tuple(labels), 0.0))
    results.sort(key=lambda q: q.labels)
    return results


def _validate_circuit(g: Graph, circuit: EulerCircuit) -> None:
    verts = circuit.vertices
    for v in verts:
        g._check_vertex(v)
    steps = []
    for a, b in zip(verts, verts[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge of the graph")
        steps.append((a, b) if a < b else (b, a))
    if len(steps) != g.edge_count or len(set(steps)) != len(steps):
        raise ValueError(
            f"walk uses {len(steps)} steps over {len(set(steps))} distinct edges; "
            f"an Euler circuit must use each of the {g.edge_count} edges exactly once"
        )


def circuit_to_phases(g: Graph, circuit: EulerCircuit, base: float = 0.0) -> QuarterLabeling:
    """Walk the circuit raising the label by +1 mod 4 at each step.

    The start vertex takes label 0. Raises CircuitLabelConflictError when a
    revisit would assign a different label, i.e. some revisit gap is not a
    multiple of four. Isolated vertices (never on the circuit) get label 0.
    """
    _validate_circuit(g, circuit)
    labels = [-1] * g.vertex_count
    first_pos: dict[int, int] = {}
    for i, v in enumerate(circuit.vertices):
        lab = i % 4
        if labels[v] < 0:
            labels[v] = lab
            first_pos[v] = i
        elif labels[v] != lab:
            raise CircuitLabelConflictError(v, first_pos[v], i)
    for v in range(g.vertex_count):
        if labels[v] < 0:
            labels[v] = 0
    return QuarterLabeling(tuple(labels), base)


def _exact_cde_labels(g: Graph, q: QuarterLabeling) -> None:
    """Integer-exact CDE validity of a labeling; raises ValueError if not."""
    if len(q.labels) != g.vertex_count:
        raise ValueError(f"labeling has {len(q.labels)} entries for {g.vertex_count} vertices")
    for k in range(g.vertex_count):
        plus = minus = 0
        for j in g.neighbors(k):
            off = (q.labels[j] - q.labels[k]) % 4
            if off == 1:
                plus += 1
            elif off == 3:
                minus += 1
            else:
                raise ValueError(
                    f"not a completely degenerate equilibrium: labels of edge "
                    f"({min(j, k)}, {max(j, k)}) differ by {off} mod 4"
                )
        if plus != minus:
            raise ValueError(
                f"not a completely degenerate equilibrium: vertex {k} has "
                f"{plus} neighbors at +1 and {minus} at -1"
            )


def phases_to_circuit(g: Graph, q: QuarterLabeling) -> EulerCircuit:
    """Build an Euler circuit along which the label rises by +1 mod 4.

    Orienting each edge in its label-increasing direction yields a balanced
    digraph, which a Hierholzer pass traverses: grow a greedy closed walk
    from the smallest vertex (always taking the smallest unused successor),
    then repeatedly splice closed sub-walks at the earliest walk vertex with
    unused edges. Requires a connected graph with at least one edge and a
    labeling that is exactly a CDE.
    """
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    if len(connected_components(g)) != 1:
        raise ValueError("graph must be connected")
    _exact_cde_labels(g, q)

    succ = {
        v: deque(j for j in g.neighbors(v) if (q.labels[j] - q.labels[v]) % 4 == 1)
        for v in range(g.vertex_count)
    }

    def closed_walk(start):
        walk = [start]
        v = start
        while succ[v]:
            v = succ[v].popleft()
            walk.append(v)
        if v != start:
            raise AssertionError("walk stalled away from its start vertex")
        return walk

    circuit = closed_walk(0)
    remaining = g.edge_count - (len(circuit) - 1)
    while remaining > 0:
        i = next(idx for idx, v in enumerate(circuit) if succ[v])
        sub = closed_walk(circuit[i])
        circuit = circuit[:i] + sub + circuit[i + 1 :]
        remaining -= len(sub) - 1
    return EulerCircuit(tuple(circuit))


def check_mod4_circuit(circuit: EulerCircuit) -> Mod4Verdict:
    """All occurrences of each vertex must be pairwise congruent mod 4.

    Positions run over the stored sequence including the closing entry, so
    the start vertex occurs at 0 and at M: a passing circuit needs a length
    divisible by four.
    """
    positions: dict[int, list[int]] = {}
    for i, v in enumerate(circuit.vertices):
        positions.setdefault(v, []).append(i)
    for v in sorted(positions):
        pos = positions[v]
        r = pos[0] % 4
        for p in pos[1:]:
            if p % 4 != r:
                return Mod4Verdict(False, vertex=v, positions=(pos[0], p))
    return Mod4Verdict(True)


@dataclass(frozen=True, eq=False)
class NonidenticalConstruction:
    """Bipartite construction output, or the odd cycle blocking it."""

    phases: np.ndarray | None
    frequencies: np.ndarray | None
    coupling: float
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.phases is not None


def construct_nonidentical_cde(g: Graph, coupling: float = 1.0) -> NonidenticalConstruction:
    """Phases 0 / pi/2 on a bipartition plus the frequencies that fix them.

    On a bipartite graph with parts X, Y this sets theta = 0 on X and pi/2
    on Y, then omega_k = -K * sum over neighbors of sin(theta_j - theta_k),
    which makes the configuration a completely degenerate equilibrium. On a
    non-bipartite graph no coupling or frequencies can: the odd-cycle
    witness is returned instead.
    """
    coupling = float(coupling)
    if not coupling > 0:
        raise ValueError("coupling must be positive")
    split = is_bipartite(g)
    if not split:
        return NonidenticalConstruction(None, None, coupling, split.odd_cycle)
    theta = np.zeros(g.vertex_count)
    theta[list(split.parts[1])] = HALF_PI
    omega = np.array(
        [
            -coupling * sum(np.sin(theta[j] - theta[k]) for j in g.neighbors(k))
            for k in range(g.vertex_count)
        ]
    )
    return NonidenticalConstruction(theta, omega, coupling)


@dataclass(frozen=True)
class AdmitsReport:
    """Whether a graph admits a CDE, and which filter decided."""

    admits: bool
    decided_by: str  # edgeless | odd-degree | triangle | non-bipartite | enumeration
    edgeless: bool = False
    odd_degree_vertex: int | None = None
    triangle: tuple[int, int, int] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.admits


def admits_cde(g: Graph, budget: int = 1_000_000) -> AdmitsReport:
    """Cheap necessary filters, then an existence search per component.

    Filter order: edgeless graphs are trivially degenerate (flagged), any
    odd degree refutes, then a triangle, then non-bipartiteness; otherwise
    enumeration decides. Raises BudgetExceededError like enumerate_cdes.
    """
    if g.edge_count == 0:
        return AdmitsReport(True, "edgeless", edgeless=True)
    for k in range(g.vertex_count):
        if g.degree(k) % 2:
            return AdmitsReport(False, "odd-degree", odd_degree_vertex=k)
    tri = contains_triangle(g)
    if tri is not None:
        return AdmitsReport(False, "triangle", triangle=tri)
    split = is_bipartite(g)
    if not split:
        return AdmitsReport(False, "non-bipartite", odd_cycle=split.odd_cycle)
    found = enumerate_cdes(g, budget=budget, limit=1)
    return AdmitsReport(bool(found), "enumeration")
