"""Shared test oracles, independent of the library's own search paths."""

from __future__ import annotations

import math

import numpy as np

from degen_kuramoto import Graph


def brute_force_cdes(g: Graph) -> list[tuple[int, ...]]:
    """All CDE labelings of a connected graph by scanning 4^(N-1) options.

    Vertex 0 is pinned to label 0. A labeling qualifies when every edge's
    labels differ by +-1 mod 4 and every vertex has equally many +1 and -1
    neighbor offsets. Vectorized mixed-radix scan; deliberately ignorant of
    the package's backtracking enumerator.
    """
    n = g.vertex_count
    if n == 0:
        return []
    m = 4 ** (n - 1)
    codes = np.arange(m)
    labels = np.zeros((m, n), dtype=np.int64)
    for k in range(1, n):
        labels[:, k] = (codes // 4 ** (k - 1)) % 4
    ok = np.ones(m, dtype=bool)
    for u, v in g.edges:
        diff = (labels[:, u] - labels[:, v]) % 4
        ok &= (diff == 1) | (diff == 3)
    for k in range(n):
        nbrs = list(g.neighbors(k))
        if not nbrs:
            continue
        plus = np.zeros(m, dtype=np.int64)
        for j in nbrs:
            plus += ((labels[:, j] - labels[:, k]) % 4 == 1)
        ok &= plus * 2 == len(nbrs)
    return [tuple(row) for row in labels[ok]]


def all_connected_graphs(n: int):
    """Every connected simple graph on vertices 0..n-1 (labelled, not up to iso)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        g = Graph(n, edges)
        if _connected(g):
            yield g


def _connected(g: Graph) -> bool:
    n = g.vertex_count
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Plain G(n, p) sample from the supplied generator (test-local RNG)."""
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_connected_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    while True:
        g = random_graph(n, p, rng)
        if _connected(g):
            return g


def random_bipartite_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Random bipartite graph: random split, each cross pair kept with prob p."""
    split = rng.integers(1, n)
    left = list(range(split))
    right = list(range(split, n))
    edges = [(u, v) for u in left for v in right if rng.random() < p]
    return Graph(n, edges)


def two_colorable(g: Graph) -> bool:
    """Independent parity-BFS bipartiteness check for corpus construction."""
    color = [-1] * g.vertex_count
    for root in range(g.vertex_count):
        if color[root] != -1:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def random_nonbipartite_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    while True:
        g = random_graph(n, p, rng)
        if not two_colorable(g):
            return g


def symmetric_2x2_eigs(a) -> list[float]:
    """Closed-form eigenvalues of a symmetric 2x2 matrix."""
    (p, q), (_, r) = a
    mean = 0.5 * (p + r)
    disc = math.sqrt(max(0.25 * (p - r) ** 2 + q * q, 0.0))
    return sorted([mean - disc, mean + disc])


def symmetric_3x3_eigs(a) -> list[float]:
    """Closed-form (trigonometric) eigenvalues of a symmetric 3x3 matrix."""
    a = np.asarray(a, dtype=float)
    q = np.trace(a) / 3.0
    b = a - q * np.eye(3)
    p2 = float(np.sum(b * b)) / 6.0
    if p2 <= 0.0:
        return [q, q, q]
    p = math.sqrt(p2)
    c = b / p
    det = 0.5 * (
        c[0, 0] * (c[1, 1] * c[2, 2] - c[1, 2] * c[2, 1])
        - c[0, 1] * (c[1, 0] * c[2, 2] - c[1, 2] * c[2, 0])
        + c[0, 2] * (c[1, 0] * c[2, 1] - c[1, 1] * c[2, 0])
    )
    det = min(1.0, max(-1.0, det))
    phi = math.acos(det) / 3.0
    eig1 = q + 2.0 * p * math.cos(phi)
    eig3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    eig2 = 3.0 * q - eig1 - eig3
    return sorted([eig1, eig2, eig3])
