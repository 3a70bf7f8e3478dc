import itertools
import json
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.exact import omega_brute_force
from artifact.graphs import (
    F_GRAPH_EDGES,
    BiindependentPair,
    BipartiteGraph,
    Graph,
    as_bipartite,
    bipartite_complement,
    bipartite_double,
    complement,
    complete_bipartite,
    complete_graph,
    crown,
    cycle,
    cycle_bipartite,
    disjoint_union,
    dump_graph,
    empty_graph,
    expansion,
    extended_bipartite_double,
    f_graph,
    family,
    graph_from_dict,
    half_size_reduction,
    hardness_gadget,
    hypercube,
    hypercube_graph,
    hypercube_vertex_map,
    join,
    load_graph,
    perfect_matching,
    petersen,
    single_edge,
)

from conftest import bipartite_graphs, graphs


def test_graph_rejects_self_loops_duplicates_and_out_of_range():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        BipartiteGraph(2, 2, [(0, 2)])
    with pytest.raises(ValueError):
        BipartiteGraph(2, 2, [(0, 1), (0, 1)])


def test_biindependent_pair_accessors():
    P = BiindependentPair([0, 1], [1])
    assert (P.sum, P.product, P.ratio, P.balanced) == (3, 2, Fraction(2, 3), False)
    assert BiindependentPair([], []).ratio == 0
    G = single_edge()
    assert P.is_valid_in(G)
    assert not BiindependentPair([0], [0]).is_valid_in(G)


def test_bipartite_double_of_an_edge_is_a_matching():
    B = bipartite_double(complete_graph(2))
    assert B.edges == {(0, 1), (1, 0)}


def test_bipartite_double_of_triangle_is_six_cycle():
    B = bipartite_double(cycle(3))
    assert nx.is_isomorphic(B.flatten().to_networkx(), nx.cycle_graph(6))


def test_extended_double_examples():
    assert extended_bipartite_double(empty_graph(4)).edges == perfect_matching(4).edges
    assert extended_bipartite_double(cycle(3)).is_complete()


@pytest.mark.parametrize("r", [3, 4])
def test_hypercube_is_extended_double_of_smaller_hypercube(r):
    # parity / drop-last-bit map
    pos = hypercube_vertex_map(r)
    B0 = extended_bipartite_double(hypercube_graph(r - 1))
    low = (1 << (r - 1)) - 1
    mapping = {}
    for x, (side, idx) in pos.items():
        mapping[(side, idx)] = (side, x & low)
    Q = hypercube(r)
    image = {(mapping[(0, i)][1], mapping[(1, j)][1]) for i, j in Q.edges}
    assert image == set(B0.edges)


@given(graphs())
def test_double_biadjacency_blocks(G):
    A = G.adjacency()
    assert np.array_equal(bipartite_double(G).biadjacency(), A)
    assert np.array_equal(extended_bipartite_double(G).biadjacency(), A + np.eye(G.n))
    n = G.n
    flat = bipartite_double(G).flatten().adjacency()
    assert np.array_equal(flat, np.block([[np.zeros((n, n)), A], [A, np.zeros((n, n))]]))


@given(bipartite_graphs())
def test_bipartite_complement_is_involution_with_biadjacency_J_minus_M(G):
    C = bipartite_complement(G)
    assert np.array_equal(C.biadjacency(), 1 - G.biadjacency())
    assert bipartite_complement(C) == G


@given(graphs())
def test_complement_is_involution(G):
    assert complement(complement(G)) == G


def test_bipartite_complement_examples():
    assert bipartite_complement(complete_bipartite(3, 3)).m == 0
    assert bipartite_complement(perfect_matching(4)) == crown(4)


@given(graphs(max_n=5), graphs(max_n=5), st.integers(1, 3))
def test_count_identities(G, H, k):
    U = disjoint_union(G, H)
    J = join(G, H)
    X = expansion(G, k)
    assert (U.n, U.m) == (G.n + H.n, G.m + H.m)
    assert (J.n, J.m) == (G.n + H.n, G.m + H.m + G.n * H.n)
    assert X.n == k * G.n
    assert X.m == k * (k - 1) // 2 * G.n + k * k * G.m


@given(graphs(min_n=1, max_n=5), st.integers(1, 3))
def test_expansion_multiplies_clique_number(G, k):
    assert omega_brute_force(expansion(G, k)) == k * omega_brute_force(G)


def test_expansion_and_join_examples():
    assert expansion(complete_graph(2), 3) == complete_graph(6)
    W = join(cycle(5), complete_graph(1))
    assert W.m == 10
    with pytest.raises(ValueError):
        expansion(cycle(3), 0)


def test_f_graph_invariants():
    F = f_graph()
    assert (F.n, F.m) == (6, 10)
    assert omega_brute_force(F) == 3
    assert len(F_GRAPH_EDGES) == 10


@pytest.mark.parametrize("G,side", [(complete_graph(2), 5), (Graph(4, [(0, 1), (2, 3)]), 14), (cycle(6), 48)])
def test_hardness_gadget_sizes(G, side):
    H = hardness_gadget(G)
    assert H.n1 == H.n2 == side
    n, m = G.n, G.m
    assert H.m == n + m * ((n + 1) ** 2 + 2 * (n + 1))


def test_hardness_gadget_layout():
    G = complete_graph(2)
    H = hardness_gadget(G)
    assert {(0, 0), (1, 1)} <= H.edges
    R = range(2, 5)
    assert all((i, j) in H.edges for i in R for j in R)
    assert all((v, j) in H.edges for v in (0, 1) for j in R)
    assert (0, 1) not in H.edges


def test_half_size_reduction_on_six_cycle():
    H = half_size_reduction(cycle(6))
    assert (H.n, H.m) == (52, 650)


@given(graphs(min_n=2, max_n=8).filter(lambda G: G.n % 2 == 0))
def test_half_size_reduction_edge_count(G):
    H = half_size_reduction(G)
    assert 4 * H.m == H.n * (H.n - 2)


@pytest.mark.parametrize("G", [cycle(4), Graph(4, [(0, 1)]), complete_graph(4), Graph(6, [(0, 1), (1, 2), (0, 2)]), empty_graph(2)])
def test_half_size_reduction_clique_number(G):
    from artifact.exact import omega

    H = half_size_reduction(G)
    n = G.n // 2
    m = G.m
    t = next(t for t in itertools.count() if t * (t - 1) // 2 >= 9 * n * n + n + m)
    assert omega(H) == omega(G) + 3 * n + t


def test_half_size_reduction_rejects_odd_order():
    with pytest.raises(ValueError):
        half_size_reduction(cycle(5))


def test_family_shapes():
    C = crown(5)
    assert (C.n1, C.n2, C.m, C.regular_degree()) == (5, 5, 20, 4)
    Q = hypercube(3)
    assert (Q.order, Q.m, Q.regular_degree(), Q.n1, Q.n2) == (8, 12, 3, 4, 4)
    B = as_bipartite(cycle(6))
    assert B.m == 6 and B.regular_degree() == 2
    assert cycle_bipartite(6).edges == {(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)}
    assert petersen().regular_degree() == 3
    assert family("crown", 4) == crown(4)
    with pytest.raises(ValueError):
        family("nope", 3)
    with pytest.raises(ValueError):
        cycle(2)


def test_as_bipartite_rejects_odd_cycle():
    with pytest.raises(ValueError):
        as_bipartite(cycle(5))


def test_sign_vector_and_objective():
    G = crown(3)
    f = G.sign_vector()
    assert list(f) == [1, 1, 1, -1, -1, -1]
    C = G.objective_matrix()
    x = np.array([1, 1, 0, 0, 1, 1.0])
    assert x @ C @ x == pytest.approx(2 * 2)


@given(st.one_of(graphs(), bipartite_graphs()))
def test_json_round_trip(G):
    assert graph_from_dict(json.loads(json.dumps(G.to_dict()))) == G


def test_file_round_trip(tmp_path):
    p = tmp_path / "g.json"
    dump_graph(crown(4), p)
    assert load_graph(p) == crown(4)
    assert load_graph(p).digest() == crown(4).digest()
