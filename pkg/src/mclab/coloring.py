"""Colorings in which every vertex pair has a single-color path, and the
machinery around mc(G), the largest color count such a coloring can use.

The bound ladder:

* lower: a spanning tree painted one color and every other edge painted its
  own fresh color gives mc(G) >= m - n + 2 for connected G;
* upper: mc(G) <= min(m - n + delta + 1, m - n + chi, m - n + kappa + 1),
  never above C(n, 2);
* exactness certificates: five structural conditions, any of which forces
  mc(G) = m - n + 2 on connected graphs with more than 3 vertices;
* exact oracle: exhaustive search over edge-set partitions for small m.

Disconnected graphs take mc = 0 by convention; operations whose construction
genuinely needs connectivity raise instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceededError, NotConnectedError
from .graphs import (
    Graph,
    UnionFind,
    chromatic_number,
    complement,
    diameter,
    has_cut_vertex,
    is_connected,
    is_k_connected,
    is_triangle_free,
    max_degree,
    min_degree,
    pair_at,
    pair_index,
    spanning_tree,
    vertex_connectivity,
)

# certificate tags recording which argument produced a bound or exact value
TREE_LOWER = "TREE_LOWER"
MIN_DEGREE_UPPER = "MIN_DEGREE_UPPER"
CHROMATIC_UPPER = "CHROMATIC_UPPER"
CONNECTIVITY_UPPER = "CONNECTIVITY_UPPER"
EXACT_A = "EXACT_A"  # complement is 4-connected
EXACT_B = "EXACT_B"  # triangle-free
EXACT_C = "EXACT_C"  # max-degree inequality in exact integer arithmetic
EXACT_D = "EXACT_D"  # diameter at least 3
EXACT_E = "EXACT_E"  # cut vertex
COMPLETE_GRAPH = "COMPLETE_GRAPH"
DISCONNECTED = "DISCONNECTED"
EXACT_ORACLE = "EXACT_ORACLE"

DEFAULT_ORACLE_CAP = 12  # Bell(12) ~ 4.2e6 partitions
DEFAULT_CHI_CAP = 16
DEFAULT_KAPPA_CAP = 64  # flow-based connectivity checks beyond this are skipped


class EdgeColoring:
    """Total assignment of color labels to the edges of one graph.

    Labels are contiguous integers 0..k-1 in first-occurrence order along the
    canonical edge sequence. Use :meth:`from_labels` to canonicalize arbitrary
    label values.
    """

    def __init__(self, graph: Graph, labels: Sequence[int]):
        labels = tuple(int(x) for x in labels)
        if len(labels) != graph.m:
            raise ValueError(
                f"coloring has {len(labels)} labels but the graph has {graph.m} edges"
            )
        distinct = 0
        for lab in labels:
            if lab > distinct or lab < 0:
                raise ValueError(
                    "labels must be contiguous from 0 in first-occurrence order; "
                    "use from_labels() to canonicalize"
                )
            if lab == distinct:
                distinct += 1
        self.graph = graph
        self.labels = labels
        self.num_colors = distinct

    @classmethod
    def from_labels(cls, graph: Graph, raw: Iterable[object]) -> "EdgeColoring":
        """Map arbitrary hashable labels onto the canonical 0..k-1 scheme."""
        mapping: dict[object, int] = {}
        canon = []
        for lab in raw:
            if lab not in mapping:
                mapping[lab] = len(mapping)
            canon.append(mapping[lab])
        return cls(graph, canon)

    @cached_property
    def classes(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Edges grouped by label, index j holding color class j."""
        buckets: list[list[tuple[int, int]]] = [[] for _ in range(self.num_colors)]
        for edge, lab in zip(self.graph.edges, self.labels):
            buckets[lab].append(edge)
        return tuple(tuple(b) for b in buckets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.graph == other.graph and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.graph, self.labels))

    def __repr__(self) -> str:
        return f"EdgeColoring(k={self.num_colors}, m={len(self.labels)})"


@dataclass(frozen=True)
class McBounds:
    """Certified bracket on mc(G), with the arguments that produced it."""

    lower: int
    upper: int
    exact: Optional[int]
    certificates: tuple[str, ...]

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper):
            raise ValueError("bounds must satisfy 0 <= lower <= upper")
        if self.exact is not None and not (self.lower <= self.exact <= self.upper):
            raise ValueError("exact value must lie within the bounds")


def _class_components(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Nontrivial components of one color class (vertices touched by its edges)."""
    uf = UnionFind(n)
    touched = set()
    for u, v in edges:
        uf.union(u, v)
        touched.add(u)
        touched.add(v)
    groups: dict[int, list[int]] = {}
    for v in sorted(touched):
        groups.setdefault(uf.find(v), []).append(v)
    return list(groups.values())


def first_uncovered_pair(g: Graph, c: EdgeColoring) -> Optional[tuple[int, int]]:
    """Smallest vertex pair (canonical order) with no single-color path, or None."""
    if c.graph != g:
        raise ValueError("coloring does not belong to this graph")
    n = g.n
    total = n * (n - 1) // 2
    if total == 0:
        return None
    covered = np.zeros(total, dtype=bool)
    for cls in c.classes:
        for comp in _class_components(n, cls):
            for i, u in enumerate(comp):
                for v in comp[i + 1 :]:
                    covered[pair_index(u, v, n)] = True
    if covered.all():
        return None
    return pair_at(int(covered.argmin()), n)


def verify_mc_coloring(g: Graph, c: EdgeColoring) -> bool:
    """True iff every vertex pair is joined by a path inside one color class."""
    return first_uncovered_pair(g, c) is None


def spanning_tree_coloring(g: Graph) -> EdgeColoring:
    """Tree edges share label 0; every non-tree edge gets a fresh label.

    Uses exactly m - n + 2 colors on a connected graph (one color when g is a
    tree) and always verifies: the tree class alone joins every pair.
    """
    tree = set(spanning_tree(g))
    labels = []
    fresh = 1
    for e in g.edges:
        if e in tree:
            labels.append(0)
        else:
            labels.append(fresh)
            fresh += 1
    return EdgeColoring(g, labels)


def mc_lower_bound(g: Graph) -> int:
    """m - n + 2 for connected graphs; 0 when disconnected.

    A single vertex has no edges to color, so it also takes 0 despite the
    formula giving 1.
    """
    if g.n == 1 or not is_connected(g):
        return 0
    return g.m - g.n + 2


def mc_upper_bound(
    g: Graph,
    chi_cap: int = DEFAULT_CHI_CAP,
    kappa_cap: int = DEFAULT_KAPPA_CAP,
) -> tuple[int, tuple[str, ...]]:
    """Minimum of the degree, chromatic, and connectivity upper bounds.

    The chromatic term joins only when n <= chi_cap (exact chi is exponential),
    the connectivity term only when n <= kappa_cap (flow-based kappa is
    quadratic in n times a max-flow). Returns the bound and the tags of every
    term achieving it.
    """
    if g.n < 2:
        raise ValueError("upper bound needs at least 2 vertices")
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")
    m, n = g.m, g.n
    candidates = [(m - n + min_degree(g) + 1, MIN_DEGREE_UPPER)]
    if n <= chi_cap:
        candidates.append((m - n + chromatic_number(g, cap=chi_cap), CHROMATIC_UPPER))
    if n <= kappa_cap:
        candidates.append((m - n + vertex_connectivity(g) + 1, CONNECTIVITY_UPPER))
    best = min(value for value, _ in candidates)
    best = min(best, n * (n - 1) // 2)
    tags = tuple(tag for value, tag in candidates if value == best)
    return best, tags


def exactness_certificate(
    g: Graph, kappa_cap: int = DEFAULT_KAPPA_CAP
) -> Optional[str]:
    """First structural condition forcing mc(G) = m - n + 2, or None.

    Checked in order: (a) complement 4-connected, (b) triangle-free, (c) the
    max-degree inequality Delta*(n-3) < n*(n-3) - (2m - 3(n-1)) in exact
    integer arithmetic, (d) diameter >= 3, (e) cut vertex. Applies only to
    connected graphs on more than 3 vertices; condition (a) is skipped (never
    fires) when n > kappa_cap.
    """
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")
    n, m = g.n, g.m
    if n <= 3:
        raise ValueError("hypothesis violated: certificate requires more than 3 vertices")
    if n <= kappa_cap and is_k_connected(complement(g), 4):
        return EXACT_A
    if is_triangle_free(g):
        return EXACT_B
    if max_degree(g) * (n - 3) < n * (n - 3) - (2 * m - 3 * (n - 1)):
        return EXACT_C
    if diameter(g) >= 3:
        return EXACT_D
    if has_cut_vertex(g):
        return EXACT_E
    return None


def _rgs_search(g: Graph, m: int, best: int, prune: bool) -> int:
    """DFS over restricted-growth label strings; returns the max verified class count.

    With prune=True, prefixes that cannot beat `best` are skipped, which is
    lossless because `best` starts at a count already achieved by a valid
    coloring (or at 1, the always-valid single-class coloring).
    """
    labels = [0] * m

    def walk(i: int, used: int) -> None:
        nonlocal best
        if prune and used + (m - i) <= best:
            return
        if i == m:
            if used > best and verify_mc_coloring(g, EdgeColoring(g, labels)):
                best = used
            return
        for lab in range(used + 1):
            labels[i] = lab
            walk(i + 1, used + 1 if lab == used else used)

    walk(0, 0)
    return best


def exact_mc_small(g: Graph, cap: int = DEFAULT_ORACLE_CAP, prune: bool = True) -> int:
    """Exact mc(G) by exhaustive partition search; 0 when disconnected.

    Enumeration runs over restricted-growth strings, i.e. set partitions of
    the edge sequence, because color identity carries no meaning. The search
    starts from the verified spanning-tree coloring, so pruning never changes
    the result (the property is also asserted by tests with prune=False).
    """
    if not is_connected(g):
        return 0
    m = g.m
    if m > cap:
        raise CapExceededError(f"edge count {m} too large for the exact search (cap {cap})")
    if m == 0:
        return 0
    seed = spanning_tree_coloring(g).num_colors if prune else 1
    return _rgs_search(g, m, seed, prune)


def analyze(
    g: Graph,
    use_exact_oracle: bool = True,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    chi_cap: int = DEFAULT_CHI_CAP,
    kappa_cap: int = DEFAULT_KAPPA_CAP,
) -> McBounds:
    """Full certified bracket on mc(G), with the exact value whenever one
    of the closed-form arguments or the small-graph oracle settles it.
    """
    if not is_connected(g):
        return McBounds(0, 0, 0, (DISCONNECTED,))
    n = g.n
    total = n * (n - 1) // 2
    lower = mc_lower_bound(g)
    certs: list[str] = [TREE_LOWER]
    if n == 1:
        return McBounds(0, 0, 0, (TREE_LOWER, COMPLETE_GRAPH))
    upper, upper_tags = mc_upper_bound(g, chi_cap=chi_cap, kappa_cap=kappa_cap)
    certs.extend(upper_tags)
    if g.is_complete():
        return McBounds(lower, upper, total, tuple(certs) + (COMPLETE_GRAPH,))
    exact: Optional[int] = None
    if n > 3:
        cert = exactness_certificate(g, kappa_cap=kappa_cap)
        if cert is not None:
            exact = lower
            certs.append(cert)
    if exact is None and lower == upper:
        exact = lower
    if exact is None and use_exact_oracle and g.m <= oracle_cap:
        exact = exact_mc_small(g, cap=oracle_cap)
        certs.append(EXACT_ORACLE)
    return McBounds(lower, upper, exact, tuple(certs))
