from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf2 import quasigroup as qg
from hopf2.errors import SizeLimit
from hopf2.quasigroup import FiniteQuasigroup

from oracles import assoc, brute_quasiassociative, loops_of_order, mul


def test_cyclic_group_is_valid():
    assert qg.validate(qg.cyclic_group(4)) == []


def test_g3_is_valid(G):
    assert qg.validate(G(3)) == []


def test_repeated_row_entry_is_reported():
    T = [[0, 1, 2], [1, 2, 0], [2, 2, 1]]
    Q = FiniteQuasigroup(["a", "b", "c"], T, 0)
    assert "LatinSquareViolation" in [v.kind for v in qg.validate(Q)]


def test_group_nucleus_is_everything():
    Z = qg.cyclic_group(6)
    assert qg.nucleus(Z) == set(Z.elements)


@pytest.mark.parametrize("n,size", [(1, 4), (2, 8)])
def test_small_cayley_bases_are_associative(G, n, size):
    assert qg.nucleus(G(n)) == set(G(n).elements)
    assert len(G(n).elements) == size


def test_g3_nucleus_is_plus_minus_e0(G):
    assert qg.nucleus(G(3)) == {"e[a=000,i=0]", "e[a=000,i=1]"}


def test_group_associator_is_trivial():
    rep = qg.associator(qg.cyclic_group(5))
    assert rep.image == {"c0"}


def test_g2_associator_trivial_by_enumeration(G):
    Q = G(2)
    assert {assoc(Q, x, y, z) for x, y, z in product(Q.elements, repeat=3)} == {"e[a=00,i=0]"}
    assert qg.associator(Q).image == {"e[a=00,i=0]"}


def test_g3_associator_image_by_enumeration(G):
    Q = G(3)
    beta = qg.associator_table(Q)
    seen = set()
    for x, y, z in product(range(Q.order), repeat=3):
        e = Q.elements
        want = assoc(Q, e[x], e[y], e[z])
        assert e[beta[x, y, z]] == want
        seen.add(want)
    assert seen == {"e[a=000,i=0]", "e[a=000,i=1]"}
    rep = qg.associator(Q)
    assert rep.image == seen and rep.in_nucleus


def test_associator_defining_identity(G):
    Q = G(3)
    beta = qg.associator_table(Q)
    for x, y, z in product(range(Q.order), repeat=3):
        e = Q.elements
        assert mul(Q, e[x], mul(Q, e[y], e[z])) == mul(Q, e[beta[x, y, z]], mul(Q, mul(Q, e[x], e[y]), e[z]))


def test_quasiassociativity_of_groups_and_g3(G):
    assert qg.is_quasiassociative(qg.cyclic_group(3))
    assert qg.is_quasiassociative(G(3))


def test_non_quasiassociative_loop_of_order_five():
    found = None
    for T in loops_of_order(5):
        if not brute_quasiassociative(T):
            found = T
            break
    assert found is not None
    Q = FiniteQuasigroup([f"q{i}" for i in range(5)], found, 0)
    assert not qg.is_quasiassociative(Q)


def test_every_order_four_loop_agrees_with_brute_force():
    for T in loops_of_order(4):
        Q = FiniteQuasigroup(list("abcd"), T, 0)
        assert qg.is_quasiassociative(Q) == brute_quasiassociative(T)


def test_cocycle_condition(G):
    assert qg.cocycle_check(qg.cyclic_group(4))
    assert qg.cocycle_check(G(2))
    assert qg.cocycle_check(G(3))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 14)])
def test_product_tree_counts(n, count):
    trees = qg.product_trees(n)
    assert len(trees) == count
    assert all(qg.tree_leaves(t) == n + 1 for t in trees)


def test_product_tree_limit():
    with pytest.raises(SizeLimit):
        qg.product_trees(qg.MAX_TREE_N + 1)


def test_nucleus_passthrough(G):
    assert qg.nucleus_passthrough_check(qg.cyclic_group(3), 3)
    assert qg.nucleus_passthrough_check(G(3), 2)
    assert qg.nucleus_passthrough_check(G(3), 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 9), st.integers(0, 8))
def test_random_relabelled_cyclic_group_is_valid(n, seed):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    Z = qg.cyclic_group(n)
    inv_perm = np.argsort(perm)
    T = perm[Z.table[inv_perm][:, inv_perm]]
    Q = FiniteQuasigroup([f"g{i}" for i in range(n)], T, int(perm[0]))
    assert qg.validate(Q) == []
    assert qg.is_associative(Q)


def test_json_round_trip(G):
    Q = G(3)
    R = FiniteQuasigroup.from_json(Q.to_json())
    assert R.elements == Q.elements
    assert np.array_equal(R.table, Q.table)
