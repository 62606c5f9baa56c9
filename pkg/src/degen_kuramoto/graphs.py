"""Simple undirected graphs: structural predicates and the generator zoo."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "BipartitenessResult",
    "EulerianResult",
    "connected_components",
    "is_bipartite",
    "is_eulerian",
    "contains_triangle",
    "cycle_graph",
    "hypercube_graph",
    "glue_four_cycle",
    "complete_graph",
    "complete_bipartite_graph",
    "erdos_renyi",
]


class Graph:
    """Immutable simple undirected graph on dense vertex ids 0..N-1.

    Edges are normalized to sorted (u, v) pairs with u < v; self-loops and
    parallel edges are rejected at construction.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, vertex_count: int, edges=()):
        n = int(vertex_count)
        if n < 0:
            raise ValueError("vertex_count must be nonnegative")
        canonical = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            canonical.add((u, v) if u < v else (v, u))
        self._n = n
        self._edges = tuple(sorted(canonical))
        adj = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, k: int) -> tuple[int, ...]:
        self._check_vertex(k)
        return self._adj[k]

    def degree(self, k: int) -> int:
        """Number of edges incident to vertex k."""
        self._check_vertex(k)
        return len(self._adj[k])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def adjacency_matrix(self) -> np.ndarray:
        """Dense symmetric 0/1 matrix with zero diagonal."""
        a = np.zeros((self._n, self._n))
        for u, v in self._edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def _check_vertex(self, k) -> None:
        if not 0 <= k < self._n:
            raise ValueError(f"vertex id {k} outside 0..{self._n - 1}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Graph(vertices={self._n}, edges={len(self._edges)})"


def connected_components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Partition of vertex ids into connected components.

    Components are sorted internally and listed by their smallest vertex.
    """
    seen = [False] * g.vertex_count
    parts = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        queue = deque([root])
        seen[root] = True
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        parts.append(tuple(sorted(comp)))
    return tuple(parts)


@dataclass(frozen=True)
class BipartitenessResult:
    """Either a bipartition (parts) or an odd closed walk refuting one."""

    parts: tuple[tuple[int, ...], tuple[int, ...]] | None
    odd_cycle: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.parts is not None


def is_bipartite(g: Graph) -> BipartitenessResult:
    """Two-color the graph or produce an odd cycle as a vertex list.

    Component roots (smallest ids) always land in the first part.
    """
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    for root in range(g.vertex_count):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return BipartitenessResult(None, _odd_cycle(parent, v, w))
    zeros = tuple(v for v in range(g.vertex_count) if color[v] == 0)
    ones = tuple(v for v in range(g.vertex_count) if color[v] == 1)
    return BipartitenessResult((zeros, ones), None)


def _odd_cycle(parent, u, v) -> tuple[int, ...]:
    """Close the BFS-tree paths of the conflict edge (u, v) into an odd cycle."""
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_v = [v]
    while parent[path_v[-1]] != -1:
        path_v.append(parent[path_v[-1]])
    in_u = {x: i for i, x in enumerate(path_u)}
    meet = next(i for i, x in enumerate(path_v) if x in in_u)
    lca = path_v[meet]
    # u .. lca, then back down lca .. v; edge (v, u) closes the cycle
    cycle = path_u[: in_u[lca] + 1] + path_v[:meet][::-1]
    return tuple(cycle)


@dataclass(frozen=True)
class EulerianResult:
    """Even-degree and one-edge-component verdict; isolated vertices are harmless."""

    is_eulerian: bool
    reason: str | None = None
    odd_degree_vertex: int | None = None

    def __bool__(self) -> bool:
        return self.is_eulerian


def is_eulerian(g: Graph) -> EulerianResult:
    """True iff every degree is even and all edges lie in one component."""
    for k in range(g.vertex_count):
        if g.degree(k) % 2:
            return EulerianResult(False, f"vertex {k} has odd degree {g.degree(k)}", k)
    edged = [c for c in connected_components(g) if any(g.degree(v) for v in c)]
    if len(edged) > 1:
        a, b = edged[0][0], edged[1][0]
        return EulerianResult(
            False, f"edges span multiple components (e.g. vertices {a} and {b})"
        )
    return EulerianResult(True)


def contains_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Some vertex triple with all three edges present, or None."""
    nbr = [set(g.neighbors(v)) for v in range(g.vertex_count)]
    for u, v in g.edges:
        common = nbr[u] & nbr[v]
        if common:
            return tuple(sorted((u, v, min(common))))
    return None


def cycle_graph(n: int) -> Graph:
    """Cycle on vertices 0..n-1 with edges {k, k+1 mod n}."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(k, (k + 1) % n) for k in range(n)])


def hypercube_graph(d: int) -> Graph:
    """d-dimensional hypercube: 2^d bitstring vertices, edges at Hamming distance 1."""
    if d < 1:
        raise ValueError("hypercube dimension must be at least 1")
    n = 1 << d
    edges = [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)]
    return Graph(n, edges)


def glue_four_cycle(g: Graph, k: int) -> Graph:
    """Attach a fresh 4-cycle through vertex k using three new vertices."""
    g._check_vertex(k)
    n = g.vertex_count
    new_edges = [(k, n), (n, n + 1), (n + 1, n + 2), (n + 2, k)]
    return Graph(n + 3, list(g.edges) + new_edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with the first part on vertices 0..a-1."""
    if a < 0 or b < 0:
        raise ValueError("part sizes must be nonnegative")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each unordered pair kept independently with probability p.

    Randomness is counter-based (Philox keyed on seed, one draw per pair
    index), so the edge set depends only on (n, p, seed) and not on any
    iteration order.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    draws = rng.random(len(pairs))
    return Graph(n, [pair for pair, x in zip(pairs, draws) if x < p])
