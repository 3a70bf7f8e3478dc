import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact import groups
from artifact.exact import exact_bipartite_parameters
from artifact.graphs import perfect_matching


def test_cyclic_product_free_examples():
    Z5 = groups.cyclic(5)
    assert groups.is_product_free(Z5, [2, 3])
    assert not groups.is_product_free(Z5, [0])
    assert not groups.is_product_free(groups.cyclic(6), [1, 2])


@pytest.mark.parametrize("n,size", list(zip(range(1, 13), [0, 1, 1, 2, 2, 3, 2, 4, 3, 5, 4, 6])))
def test_max_product_free_cyclic(n, size):
    got, A = groups.max_product_free(groups.cyclic(n))
    assert got == size == len(A)
    assert groups.is_product_free(groups.cyclic(n), A)


@pytest.mark.parametrize("G,size", [(groups.cyclic_product(2, 2), 2), (groups.symmetric(3), 3), (groups.dihedral(4), 4)])
def test_max_product_free_small_groups(G, size):
    assert groups.max_product_free(G)[0] == size


def test_search_cap():
    with pytest.raises(groups.SearchCapExceeded):
        groups.max_product_free(groups.symmetric(4))


def test_odd_permutations_of_s3():
    S3 = groups.symmetric(3)
    odd = groups.odd_permutations(S3)
    assert len(odd) == 3 and groups.is_product_free(S3, odd)
    rep = groups.gowers_report(S3, odd, 1)
    assert rep["ok"]
    assert rep["lambda2"] == pytest.approx(3.0)
    assert rep["lambda2"] == pytest.approx(rep["lambda2_bound"])


def test_group_axioms():
    for G in (groups.cyclic(7), groups.symmetric(3), groups.dihedral(5), groups.cyclic_product(3, 2)):
        e = G.identity
        for a in range(G.order):
            assert G.mul(a, G.inverse(a)) == e
    assert groups.cyclic(4).is_abelian()
    assert not groups.symmetric(3).is_abelian()
    assert not groups.dihedral(3).is_abelian()
    assert groups.dihedral(4).order == 8
    assert groups.symmetric(3).identity == 0


@pytest.mark.parametrize(
    "table",
    [
        [[0, 1], [1, 1]],  # not a Latin square
        [[1, 0], [0, 1]],  # Latin square with identity 1, fine below
        [[0, 1, 2], [1, 0, 2], [2, 2, 0]],
        [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]][:3],
    ],
)
def test_malformed_tables(table):
    if table == [[1, 0], [0, 1]]:
        assert groups.FiniteGroup(table).identity == 1
        return
    with pytest.raises(groups.GroupError):
        groups.FiniteGroup(table)


def test_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(groups.GroupError, match="associative"):
        groups.FiniteGroup(t)


def test_cayley_graph_of_singleton_is_perfect_matching():
    H = groups.cayley_bipartite(groups.cyclic(3), [1])
    assert H.regular_degree() == 1
    rep = exact_bipartite_parameters(H)
    assert rep.g == exact_bipartite_parameters(perfect_matching(3)).g


def test_product_free_pair_is_biindependent():
    G = groups.cyclic(7)
    A = [2, 3]
    assert groups.is_product_free(G, A)
    assert groups.product_free_pair(G, A).is_valid_in(groups.cayley_bipartite(G, A))


@given(st.integers(2, 12), st.data())
def test_product_free_sets_give_biindependent_pairs(n, data):
    G = groups.cyclic(n)
    A = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    H = groups.cayley_bipartite(G, A)
    assert H.regular_degree() == len(A)
    assert groups.product_free_pair(G, A).is_valid_in(H) == groups.is_product_free(G, A)
    if groups.is_product_free(G, A):
        rep = groups.gowers_report(G, A, 1)
        assert rep["ok"], rep


def test_report_rejects_bad_input():
    with pytest.raises(groups.GroupError):
        groups.gowers_report(groups.cyclic(5), [1, 2], 1)
    with pytest.raises(groups.GroupError):
        groups.gowers_report(groups.cyclic(5), [2, 3], 0)
    with pytest.raises(groups.GroupError):
        groups.cayley_bipartite(groups.cyclic(5), [])
    with pytest.raises(groups.GroupError):
        groups.is_product_free(groups.cyclic(5), [7])


def test_specs_and_json(tmp_path):
    for spec, order in [("z5", 5), ("z2xz2", 4), ("s3", 6), ("d4", 8)]:
        G = groups.group_from_spec(spec)
        assert G.order == order
        p = tmp_path / f"{spec}.json"
        groups.dump_group(G, p)
        assert groups.load_group(p).table == G.table
    with pytest.raises(groups.GroupError):
        groups.group_from_spec("q8")
    with pytest.raises(groups.GroupError):
        groups.group_from_dict({"order": 3, "table": [[0, 1], [1, 0]]})
    assert json.loads(json.dumps(groups.cyclic(3).to_dict()))["table"][1] == [1, 2, 0]
