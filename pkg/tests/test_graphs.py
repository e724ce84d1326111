"""Graph representation and structural queries, cross-checked against brute force."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from mclab.errors import CapExceededError, NotConnectedError
from mclab.graphs import (
    MAX_VERTICES,
    Graph,
    UnionFind,
    articulation_points,
    chromatic_number,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    degree,
    diameter,
    has_cut_vertex,
    is_connected,
    is_k_connected,
    is_triangle_free,
    max_degree,
    min_degree,
    pair_at,
    pair_index,
    path_graph,
    petersen_graph,
    spanning_tree,
    star_graph,
    vertex_connectivity,
)


@st.composite
def random_graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = oracles.all_pairs(n)
    mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    return Graph(n, [p for i, p in enumerate(pairs) if (mask >> i) & 1])


# ---------------------------------------------------------------- pair codec


def test_pair_codec_roundtrip_exhaustive():
    for n in range(2, 41):
        for idx in range(n * (n - 1) // 2):
            u, v = pair_at(idx, n)
            assert 0 <= u < v < n
            assert pair_index(u, v, n) == idx


@given(st.integers(min_value=2, max_value=MAX_VERTICES), st.data())
def test_pair_codec_roundtrip_large(n, data):
    idx = data.draw(st.integers(min_value=0, max_value=n * (n - 1) // 2 - 1))
    u, v = pair_at(idx, n)
    assert pair_index(u, v, n) == idx


def test_pair_codec_rejects_out_of_range():
    with pytest.raises(ValueError):
        pair_index(2, 1, 5)
    with pytest.raises(ValueError):
        pair_index(0, 0, 5)
    with pytest.raises(ValueError):
        pair_at(10, 5)
    with pytest.raises(ValueError):
        pair_at(-1, 5)


# ------------------------------------------------------------- construction


@pytest.mark.parametrize(
    "edges",
    [
        [(1, 0)],  # endpoints out of order
        [(0, 0)],  # self-loop
        [(0, 2), (0, 1)],  # not sorted
        [(0, 1), (0, 1)],  # duplicate
        [(0, 3)],  # endpoint out of range
        [(-1, 0)],
        [(0, 1, 2)],  # wrong shape
    ],
)
def test_constructor_rejects_non_canonical(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_constructor_rejects_bad_sizes():
    with pytest.raises(ValueError):
        Graph(0)
    with pytest.raises(ValueError):
        Graph(MAX_VERTICES + 1)
    with pytest.raises(ValueError):
        Graph(3, [(0.0, 1.5)])


def test_from_pairs_normalizes():
    g = Graph.from_pairs(4, [(3, 1), (2, 0), (0, 1)])
    assert g.edges == ((0, 1), (0, 2), (1, 3))
    with pytest.raises(ValueError):
        Graph.from_pairs(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_pairs(3, [(1, 1)])


def test_graph_accepts_numpy_edges_and_is_immutable():
    arr = np.array([[0, 1], [1, 2]], dtype=np.int64)
    g = Graph(3, arr)
    arr[0, 0] = 99  # caller's array is not shared
    assert g.edges == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        g.edge_array[0, 0] = 5


def test_equality_and_hash():
    a = Graph(3, [(0, 1)])
    b = Graph(3, [(0, 1)])
    c = Graph(4, [(0, 1)])
    assert a == b and hash(a) == hash(b)
    assert a != c
    assert len({a, b, c}) == 2


def test_with_edge():
    g = path_graph(3).with_edge(2, 0)
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    with pytest.raises(ValueError):
        g.with_edge(0, 1)
    with pytest.raises(ValueError):
        g.with_edge(1, 1)


# ------------------------------------------------------------- named graphs


def test_named_graphs():
    k4 = complete_graph(4)
    assert k4.m == 6 and min_degree(k4) == max_degree(k4) == 3 and k4.is_complete()
    p4 = path_graph(4)
    assert p4.m == 3 and min_degree(p4) == 1 and max_degree(p4) == 2
    c4 = cycle_graph(4)
    assert c4.m == 4 and min_degree(c4) == max_degree(c4) == 2
    s4 = star_graph(4)
    assert s4.m == 3 and degree(s4, 0) == 3 and min_degree(s4) == 1
    pet = petersen_graph()
    assert pet.n == 10 and pet.m == 15
    assert min_degree(pet) == max_degree(pet) == 3
    with pytest.raises(ValueError):
        cycle_graph(2)
    with pytest.raises(ValueError):
        degree(k4, 4)


# ------------------------------------------- exhaustive oracle cross-checks


def test_queries_match_brute_force_all_graphs_up_to_n5():
    for n in range(1, 6):
        for edges in oracles.all_edge_subsets(n):
            g = Graph(n, edges)
            comps = oracles.brute_components(n, edges)
            assert connected_components(g) == comps
            assert is_connected(g) == (len(comps) == 1)
            assert diameter(g) == oracles.brute_diameter(n, edges)
            assert articulation_points(g) == oracles.brute_cut_vertices(n, edges)
            assert has_cut_vertex(g) == bool(oracles.brute_cut_vertices(n, edges))
            assert is_triangle_free(g) == oracles.brute_triangle_free(n, edges)
            assert vertex_connectivity(g) == oracles.brute_vertex_connectivity(n, edges)
            if edges:
                degs = [0] * n
                for u, v in edges:
                    degs[u] += 1
                    degs[v] += 1
                assert min_degree(g) == min(degs) and max_degree(g) == max(degs)


def test_queries_match_brute_force_sampled_n6():
    rng = np.random.default_rng(940221)
    pairs = oracles.all_pairs(6)
    for _ in range(400):
        density = rng.uniform(0.1, 0.9)
        edges = [p for p in pairs if rng.random() < density]
        g = Graph(6, edges)
        assert connected_components(g) == oracles.brute_components(6, edges)
        assert diameter(g) == oracles.brute_diameter(6, edges)
        assert articulation_points(g) == oracles.brute_cut_vertices(6, edges)
        assert is_triangle_free(g) == oracles.brute_triangle_free(6, edges)
        assert vertex_connectivity(g) == oracles.brute_vertex_connectivity(6, edges)


def test_vertex_connectivity_matches_brute_force_n7_n8():
    rng = np.random.default_rng(571112)
    for n in (7, 8):
        pairs = oracles.all_pairs(n)
        for _ in range(60):
            density = rng.uniform(0.2, 0.95)
            edges = [p for p in pairs if rng.random() < density]
            g = Graph(n, edges)
            kappa = oracles.brute_vertex_connectivity(n, edges)
            assert vertex_connectivity(g) == kappa
            for k in range(n + 2):
                assert is_k_connected(g, k) == (kappa >= k)


def test_chromatic_number_matches_brute_force():
    for n in range(1, 5):
        for edges in oracles.all_edge_subsets(n):
            assert chromatic_number(Graph(n, edges)) == oracles.brute_chromatic(n, edges)
    rng = np.random.default_rng(361415)
    pairs = oracles.all_pairs(5)
    for _ in range(150):
        density = rng.uniform(0, 1)
        edges = [p for p in pairs if rng.random() < density]
        assert chromatic_number(Graph(5, edges)) == oracles.brute_chromatic(5, edges)


def test_chromatic_number_named_and_cap():
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(cycle_graph(6)) == 2
    assert chromatic_number(petersen_graph()) == 3
    assert chromatic_number(Graph(5)) == 1
    assert chromatic_number(complete_graph(16)) == 16
    with pytest.raises(CapExceededError):
        chromatic_number(complete_graph(17))
    assert chromatic_number(complete_graph(17), cap=17) == 17


# ------------------------------------------------------------ spanning tree


def test_spanning_tree_golden_cases():
    assert spanning_tree(cycle_graph(4)) == ((0, 1), (0, 3), (1, 2))
    assert spanning_tree(complete_graph(3)) == ((0, 1), (0, 2))
    assert spanning_tree(path_graph(4)) == path_graph(4).edges
    assert spanning_tree(Graph(1)) == ()
    assert spanning_tree(petersen_graph()) == (
        (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (3, 4), (4, 9), (5, 7), (5, 8),
    )


def test_spanning_tree_properties_all_connected_n5():
    for n in range(2, 6):
        for edges in oracles.all_edge_subsets(n):
            if not oracles.brute_connected(n, edges):
                continue
            g = Graph(n, edges)
            tree = spanning_tree(g)
            assert len(tree) == n - 1
            assert set(tree) <= set(g.edges)
            uf = UnionFind(n)
            for u, v in tree:
                assert uf.union(u, v)  # acyclic: every tree edge merges
            assert uf.count == 1  # spans all vertices


def test_spanning_tree_rejects_disconnected():
    with pytest.raises(NotConnectedError):
        spanning_tree(Graph(4, [(0, 1), (2, 3)]))


# ------------------------------------------------------------ other queries


def test_diameter_named_cases():
    assert diameter(complete_graph(4)) == 1
    assert diameter(path_graph(4)) == 3
    assert diameter(Graph(4, [(0, 1), (2, 3)])) == math.inf
    assert diameter(Graph(1)) == 0
    assert diameter(petersen_graph()) == 2


def test_cut_vertex_named_cases():
    assert has_cut_vertex(path_graph(3))
    assert not has_cut_vertex(cycle_graph(4))
    assert not has_cut_vertex(complete_graph(4))
    assert articulation_points(star_graph(5)) == (0,)


def test_vertex_connectivity_named_cases():
    assert vertex_connectivity(complete_graph(4)) == 3
    assert vertex_connectivity(path_graph(3)) == 1
    assert vertex_connectivity(cycle_graph(4)) == 2
    assert vertex_connectivity(petersen_graph()) == 3
    assert vertex_connectivity(Graph(1)) == 0
    assert vertex_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0


def test_complement_cases():
    assert complement(complete_graph(4)).m == 0
    assert complement(Graph(3)).edges == complete_graph(3).edges
    c5c = complement(cycle_graph(5))
    assert c5c.m == 5 and min_degree(c5c) == max_degree(c5c) == 2
    assert is_connected(c5c) and is_triangle_free(c5c)


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.union(2, 3)
    assert uf.count == 3
    assert uf.find(1) == uf.find(0)
    assert uf.find(4) == 4


# ---------------------------------------------------------------- fuzz laws


@given(random_graphs(min_n=2, max_n=12))
@settings(max_examples=150, deadline=None)
def test_kappa_at_most_min_degree(g):
    assert vertex_connectivity(g) <= min_degree(g)


@given(random_graphs())
@settings(max_examples=150, deadline=None)
def test_components_partition_vertices(g):
    comps = connected_components(g)
    flat = sorted(v for comp in comps for v in comp)
    assert flat == list(range(g.n))
    assert sum(len(c) for c in comps) == g.n


@given(random_graphs(max_n=10))
@settings(max_examples=100, deadline=None)
def test_complement_involution(g):
    cc = complement(complement(g))
    assert cc == g
    assert complement(g).m == g.n * (g.n - 1) // 2 - g.m
