from dataclasses import replace
from itertools import product

import numpy as np
import pytest

from hopf2 import quasigroup as qg
from hopf2 import twogroup as tg
from hopf2.errors import PreconditionFailed
from hopf2.quasigroup import FiniteQuasigroup

from oracles import assoc, first_non_quasiassociative_loop

TRIVIAL = FiniteQuasigroup(["1"], [[0]], 0, name="1")
Z2 = qg.cyclic_group(2)


def _kinds(violations):
    return {v.kind for v in violations}


def test_conjugation_crossed_module_is_valid(G):
    assert tg.validate_crossed_module(tg.conjugation_crossed_module(G(2))) == []
    assert tg.validate_crossed_module(tg.conjugation_crossed_module(qg.cyclic_group(3))) == []


def test_trivial_crossed_module_is_valid():
    assert tg.validate_crossed_module(tg.trivial_crossed_module(Z2, TRIVIAL)) == []


def test_non_action_is_rejected():
    X = tg.conjugation_crossed_module(qg.cyclic_group(3))
    gamma = X.gamma.copy()
    gamma[1] = [0, 0, 0]
    assert "ActionViolation" in _kinds(tg.validate_crossed_module(replace(X, gamma=gamma)))


def test_z2_identity_crossed_module_gives_four_morphisms():
    X = tg.CrossedModule(Z2, Z2, [0, 1], [[0, 1], [0, 1]])
    T = tg.strict_two_group_from_crossed_module(X)
    rep = tg.verification_report(T)
    assert T.n_morphisms == 4
    assert rep["pentagon"] and rep["naturality"] and rep["interchange"]
    assert rep["structure"] == []


def test_trivial_M_gives_discrete_groupoid():
    N = qg.cyclic_group(3)
    T = tg.strict_two_group_from_crossed_module(tg.trivial_crossed_module(TRIVIAL, N))
    assert T.n_morphisms == N.order
    assert np.array_equal(T.src, T.tgt)
    assert np.array_equal(T.idm, np.arange(N.order))


def test_interchange_on_inner_automorphism_two_group(G):
    T = tg.strict_two_group_from_crossed_module(tg.conjugation_crossed_module(G(2)))
    assert tg.verify_interchange(T)
    assert tg.structure_violations(T) == []


def test_group_gives_strict_associator():
    Z = qg.cyclic_group(4)
    T = tg.coherent_two_group_from_quasigroup(Z)
    g = np.arange(4)
    assert np.array_equal(T.alpha, T.idm[(g[:, None, None] + g[None, :, None] + g[None, None, :]) % 4])


def test_g2_two_group_is_strict_with_64_morphisms(G):
    T = tg.coherent_two_group_from_quasigroup(G(2))
    assert T.n_morphisms == 64
    ids = set(T.idm.tolist())
    assert all(int(a) in ids for a in T.alpha.ravel())


def test_g3_two_group_has_32_morphisms_and_nontrivial_alpha(G):
    Q = G(3)
    T = tg.coherent_two_group_from_quasigroup(Q)
    assert T.n_morphisms == 32
    ids = set(T.idm.tolist())
    assert any(int(a) not in ids for a in T.alpha.ravel())
    # α_{g,h,k} carries β(g,h,k) as its nucleus component
    e = Q.elements
    nuc_labels = sorted(qg.nucleus(Q), key=Q.index.get)
    for a, b, c in product(range(Q.order), repeat=3):
        n, _ = T.pairs[T.alpha[a, b, c]]
        assert nuc_labels[n] == assoc(Q, e[a], e[b], e[c])


def test_g3_pentagon_naturality_interchange(G):
    rep = tg.verification_report(tg.coherent_two_group_from_quasigroup(G(3)))
    assert rep["pentagon"] and rep["naturality"] and rep["interchange"]
    assert rep["structure"] == []
    assert rep["counts"]["pentagon_quadruples"] == 16 ** 4
    assert rep["counts"]["naturality_triples"] == 32 ** 3


def _flip_nucleus(T, g, h, k):
    where = {p: i for i, p in enumerate(T.pairs)}
    n, x = T.pairs[T.alpha[g, h, k]]
    size = max(p[0] for p in T.pairs) + 1
    alpha = T.alpha.copy()
    alpha[g, h, k] = where[((n + 1) % size, x)]
    return replace(T, alpha=alpha)


def test_perturbed_alpha_breaks_pentagon(G):
    T = tg.coherent_two_group_from_quasigroup(G(3))
    assert not tg.verify_pentagon(_flip_nucleus(T, 1, 2, 4))


def test_perturbed_alpha_breaks_naturality(G):
    T = tg.coherent_two_group_from_quasigroup(G(3))
    assert not tg.verify_naturality(_flip_nucleus(T, 1, 2, 4))


def test_strict_case_passes_pentagon_and_naturality():
    T = tg.strict_two_group_from_crossed_module(tg.conjugation_crossed_module(qg.cyclic_group(3)))
    assert tg.verify_pentagon(T) and tg.verify_naturality(T)


def test_non_quasiassociative_input_is_refused():
    Q = FiniteQuasigroup(list("abcde"), first_non_quasiassociative_loop(5), 0)
    with pytest.raises(PreconditionFailed):
        tg.coherent_two_group_from_quasigroup(Q)


@pytest.mark.parametrize("make", [lambda G: tg.conjugation_crossed_module(Z2),
                                  lambda G: tg.conjugation_crossed_module(G(2)),
                                  lambda G: tg.CrossedModule(Z2, Z2, [0, 1], [[0, 1], [0, 1]])])
def test_round_trip_recovers_isomorphic_crossed_module(G, make):
    ok, Y = tg.round_trip(make(G))
    assert ok
    assert tg.validate_crossed_module(Y) == []
