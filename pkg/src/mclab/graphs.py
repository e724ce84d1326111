"""Immutable simple undirected graphs and the structural queries behind the bounds.

Vertices are ``0..n-1``. Edges are stored canonically: each pair ``(u, v)``
with ``u < v``, sorted lexicographically, no duplicates. All values are
immutable after construction and safe to share between threads or processes.
"""

from __future__ import annotations

import math
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _scipy_components

from .errors import CapExceededError, NotConnectedError

MAX_VERTICES = 1 << 20
MAX_EDGES = 1 << 28

EdgePair = tuple[int, int]


def pair_index(u: int, v: int, n: int) -> int:
    """Rank of the pair (u, v), u < v, in the canonical lexicographic order."""
    if not (0 <= u < v < n):
        raise ValueError(f"({u}, {v}) is not a canonical vertex pair for n={n}")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def pair_at(index: int, n: int) -> EdgePair:
    """Inverse of :func:`pair_index`; exact integer arithmetic."""
    total = n * (n - 1) // 2
    if not (0 <= index < total):
        raise ValueError(f"pair index {index} out of range for n={n}")
    tn = 2 * n - 1
    u = (tn - math.isqrt(tn * tn - 8 * index)) // 2
    base = u * n - u * (u + 1) // 2
    if base > index:
        u -= 1
        base = u * n - u * (u + 1) // 2
    return u, index - base + u + 1


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size."""

    __slots__ = ("parent", "size", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class Graph:
    """Simple undirected graph in canonical form.

    ``edges`` may be any sequence of integer pairs already in canonical order
    (u < v, lexicographically sorted, no duplicates); violations are rejected.
    Use :meth:`from_pairs` to build from unordered pair data.
    """

    def __init__(self, n: int, edges: Sequence[EdgePair] | np.ndarray = ()):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise ValueError("vertex count must be an integer")
        n = int(n)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        if n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} exceeds limit {MAX_VERTICES}")
        arr = np.asarray(edges)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be a sequence of (u, v) pairs")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("edge endpoints must be integers")
        if arr.shape[0] > MAX_EDGES:
            raise ValueError(f"edge count {arr.shape[0]} exceeds limit {MAX_EDGES}")
        arr = arr.astype(np.int64, copy=True)
        if arr.shape[0]:
            if int(arr[:, 0].min()) < 0 or int(arr[:, 1].max()) >= n:
                raise ValueError("edge endpoint out of range")
            if (arr[:, 0] >= arr[:, 1]).any():
                raise ValueError("each edge must satisfy u < v (no self-loops)")
            keys = arr[:, 0] * n + arr[:, 1]
            if arr.shape[0] > 1 and not (np.diff(keys) > 0).all():
                raise ValueError("edges must be strictly increasing lexicographically")
        arr.flags.writeable = False
        self.n = n
        self._array = arr

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from unordered pairs, normalizing each to (min, max) and sorting."""
        normalized = []
        for p in pairs:
            u, v = int(p[0]), int(p[1])
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            normalized.append((u, v) if u < v else (v, u))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        return cls(n, normalized)

    @property
    def m(self) -> int:
        return self._array.shape[0]

    @property
    def edge_array(self) -> np.ndarray:
        """Read-only (m, 2) int64 array of edges in canonical order."""
        return self._array

    @cached_property
    def edges(self) -> tuple[EdgePair, ...]:
        return tuple((int(u), int(v)) for u, v in self._array.tolist())

    @cached_property
    def edge_set(self) -> frozenset[EdgePair]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.bincount(self._array.ravel(), minlength=self.n)
        d.flags.writeable = False
        return d

    @cached_property
    def _adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self._array.tolist():
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    @cached_property
    def _adjacency_sets(self) -> list[set[int]]:
        return [set(lst) for lst in self._adjacency]

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def with_edge(self, u: int, v: int) -> "Graph":
        """New graph with one extra edge; rejects loops and existing edges."""
        if u > v:
            u, v = v, u
        if u == v:
            raise ValueError("self-loop not allowed")
        self._check_vertex(u)
        self._check_vertex(v)
        if (u, v) in self.edge_set:
            raise ValueError(f"edge ({u}, {v}) already present")
        return Graph(self.n, sorted(self.edges + ((u, v),)))

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._array, other._array)

    def __hash__(self) -> int:
        return hash((self.n, self._array.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _component_labels(g: Graph) -> tuple[int, np.ndarray]:
    arr = g.edge_array
    mat = coo_matrix(
        (np.ones(arr.shape[0], dtype=np.int8), (arr[:, 0], arr[:, 1])),
        shape=(g.n, g.n),
    )
    return _scipy_components(mat, directed=False)


def is_connected(g: Graph) -> bool:
    if g.n == 1:
        return True
    if g.m < g.n - 1:
        return False
    return _component_labels(g)[0] == 1


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of the vertex set; components ordered by smallest member."""
    count, labels = _component_labels(g)
    if count == 1:
        return [list(range(g.n))]
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels, minlength=count)
    comps: list[list[int]] = []
    start = 0
    for size in sizes.tolist():
        comps.append(order[start : start + size].tolist())
        start += size
    comps.sort(key=lambda c: c[0])
    return comps


def degree(g: Graph, v: int) -> int:
    g._check_vertex(v)
    return int(g.degrees[v])


def min_degree(g: Graph) -> int:
    return int(g.degrees.min())


def max_degree(g: Graph) -> int:
    return int(g.degrees.max())


def spanning_tree(g: Graph) -> tuple[EdgePair, ...]:
    """Deterministic spanning tree: breadth-first from vertex 0, neighbors ascending.

    Returns the tree's edges in canonical order; raises for disconnected input.
    """
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")
    if g.n == 1:
        return ()
    adj = g._adjacency
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    tree: list[EdgePair] = []
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                tree.append((u, v) if u < v else (v, u))
                queue.append(v)
    tree.sort()
    return tuple(tree)


def _bfs_eccentricity(adj: list[list[int]], source: int, n: int) -> int:
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    ecc = 0
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                if du + 1 > ecc:
                    ecc = du + 1
                queue.append(v)
    return ecc


def diameter(g: Graph) -> int | float:
    """Largest shortest-path distance; ``math.inf`` for disconnected graphs."""
    if not is_connected(g):
        return math.inf
    if g.n == 1:
        return 0
    adj = g._adjacency
    return max(_bfs_eccentricity(adj, s, g.n) for s in range(g.n))


def articulation_points(g: Graph) -> tuple[int, ...]:
    """Vertices whose removal increases the component count (iterative DFS)."""
    n = g.n
    adj = g._adjacency
    disc = [-1] * n
    low = [0] * n
    is_ap = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            pushed = False
            for v in it:
                if disc[v] == -1:
                    disc[v] = low[v] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((v, u, iter(adj[v])))
                    pushed = True
                    break
                if v != parent and disc[v] < low[u]:
                    low[u] = disc[v]
            if not pushed:
                stack.pop()
                if stack:
                    pu = stack[-1][0]
                    if low[u] < low[pu]:
                        low[pu] = low[u]
                    if pu != root and low[u] >= disc[pu]:
                        is_ap[pu] = True
        if root_children > 1:
            is_ap[root] = True
    return tuple(v for v in range(n) if is_ap[v])


def has_cut_vertex(g: Graph) -> bool:
    """True iff removing some single vertex disconnects its component."""
    return bool(articulation_points(g))


def is_triangle_free(g: Graph) -> bool:
    sets = g._adjacency_sets
    for u, v in g.edges:
        if sets[u] & sets[v]:
            return False
    return True


def complement(g: Graph) -> Graph:
    es = g.edge_set
    n = g.n
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in es])


def _local_vertex_connectivity(g: Graph, s: int, t: int, cutoff: int) -> int:
    """Minimum number of vertices separating non-adjacent s and t, computed as a
    maximum flow in the split digraph (each vertex an arc of capacity one).
    Stops early once the flow reaches ``cutoff``.
    """
    n = g.n
    big = n  # effectively infinite: any s-t flow is at most n - 2
    # node 2v = "in" copy, 2v+1 = "out" copy; arcs stored as twinned pairs
    to: list[int] = []
    cap: list[int] = []
    head: list[list[int]] = [[] for _ in range(2 * n)]

    def add_arc(a: int, b: int, c: int) -> None:
        head[a].append(len(to))
        to.append(b)
        cap.append(c)
        head[b].append(len(to))
        to.append(a)
        cap.append(0)

    for v in range(n):
        add_arc(2 * v, 2 * v + 1, 1)
    for u, v in g.edges:
        add_arc(2 * u + 1, 2 * v, big)
        add_arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    parent_arc = [-1] * (2 * n)
    while flow < cutoff:
        for i in range(2 * n):
            parent_arc[i] = -1
        parent_arc[source] = -2
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if u == sink:
                break
            for a in head[u]:
                w = to[a]
                if parent_arc[w] == -1 and cap[a] > 0:
                    parent_arc[w] = a
                    queue.append(w)
        if parent_arc[sink] == -1:
            break
        bottleneck = cutoff - flow
        w = sink
        while w != source:
            a = parent_arc[w]
            if cap[a] < bottleneck:
                bottleneck = cap[a]
            w = to[a ^ 1]
        w = sink
        while w != source:
            a = parent_arc[w]
            cap[a] -= bottleneck
            cap[a ^ 1] += bottleneck
            w = to[a ^ 1]
        flow += bottleneck
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity: minimum vertex cut over all non-adjacent pairs,
    with the complete-graph convention n - 1; 0 for disconnected graphs.
    """
    n = g.n
    if n == 1 or not is_connected(g):
        return 0
    if g.is_complete():
        return n - 1
    best = min_degree(g)
    es = g.edge_set
    for s in range(n):
        for t in range(s + 1, n):
            if best == 0:
                return 0
            if (s, t) not in es:
                k = _local_vertex_connectivity(g, s, t, best)
                if k < best:
                    best = k
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """True iff the graph stays connected after removing any k - 1 vertices."""
    if k <= 0:
        return True
    if g.n <= k:
        return False
    if g.is_complete():
        return True
    if not is_connected(g) or min_degree(g) < k:
        return False
    es = g.edge_set
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if (s, t) not in es and _local_vertex_connectivity(g, s, t, k) < k:
                return False
    return True


def chromatic_number(g: Graph, cap: int = 16) -> int:
    """Exact chromatic number by branch-and-bound; exhaustive, so capped by n."""
    n = g.n
    if n > cap:
        raise CapExceededError(f"graph too large for exact chromatic number (n={n} > cap={cap})")
    if g.m == 0:
        return 1
    adj = g._adjacency_sets
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))

    clique: list[int] = []
    for v in order:
        if all(u in adj[v] for u in clique):
            clique.append(v)
    lower = len(clique)

    color = [-1] * n
    for v in order:
        taken = {color[u] for u in adj[v] if color[u] >= 0}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    upper = max(color) + 1

    def colorable(k: int) -> bool:
        assign = [-1] * n

        def place(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            taken = {assign[u] for u in adj[v] if assign[u] >= 0}
            # allowing at most one brand-new color breaks label symmetry
            for c in range(min(k, used + 1)):
                if c not in taken:
                    assign[v] = c
                    if place(i + 1, max(used, c + 1)):
                        return True
            assign[v] = -1
            return False

        return place(0, 0)

    for k in range(lower, upper):
        if colorable(k):
            return k
    return upper


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]))


def star_graph(n: int) -> Graph:
    """Star on n vertices with center 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> Graph:
    outer = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5, 7), (5, 8), (6, 8), (6, 9), (7, 9)]
    return Graph(10, sorted(outer + spokes + inner))
