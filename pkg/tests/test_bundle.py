import json
from itertools import product

import pytest

from hopf2 import bundle as bd
from hopf2 import hopf as hp
from hopf2 import quasigroup as qg
from hopf2.errors import PreconditionFailed, SizeLimit
from hopf2.linear import LinearMap, compose, identity, permutation_map, tensor_map, tensor_space

from oracles import assoc, mul


def _failed(rep):
    return {c.name for c in rep.failures()}


def test_strict_group_bundle():
    b = bd.strict_group_bundle()
    assert b.dim == 4
    assert bd.full_report(b).ok and bd.check_strict(b) and bd.check_cocommutation(b)


@pytest.mark.parametrize("n,dim", [(1, 8), (2, 16)])
def test_gn_bundle_passes_everything_and_is_strict(bundles, n, dim):
    b = bundles(n)
    assert b.dim == dim
    assert _failed(bd.full_report(b)) == set()
    assert bd.check_strict(b)


def test_g3_bundle_is_not_strict(bundles):
    b = bundles(3)
    assert b.dim == 32
    assert not bd.check_strict(b)
    assert not b.B.is_coassociative()


def test_g3_bundle_cocommutation(bundles):
    assert bd.check_cocommutation(bundles(3))


def test_g3_alpha_matches_associator_oracle(bundles, G):
    b, Q = bundles(3), G(3)
    for (c, bl) in b.space.labels:
        i = c[-2]
        g = "e" + bl[1:]
        want = {}
        for x, y, z in product(Q.elements, repeat=3):
            if assoc(Q, x, y, z) == f"e[a=000,i={i}]" and mul(Q, mul(Q, x, y), z) == g:
                want["f" + x[1:], "f" + y[1:], "f" + z[1:]] = 1
        assert b.alpha.col((c, bl)) == want


def test_g2_alpha_is_the_strict_one(bundles):
    b = bundles(2)
    assert b.alpha == bd.strict_alpha(b)


def test_identity_antipode_on_H_is_caught(bundles):
    # Δ∘S_H = (S_H⊗S_H)∘Δ holds trivially for S_H = id; the coquasigroup axioms catch it
    b = bundles(2)
    failed = _failed(bd.full_report(b.replace(antipode_H=b.H.id)))
    assert "coquasigroup_antipode_S_left_mid" in failed
    assert "ii_counit_antipode" in failed
    assert not any(name.startswith("antipodes_i_") for name in failed)


def test_alpha_corruptions_are_caught(bundles):
    for d in bd.fuzz(bundles(2), count=10, seed=3, targets=("alpha",)):
        assert d["detected"]
        assert any(name.split("_", 1)[0] in {"v", "vi", "vii", "viii", "ix", "alpha"}
                   for name in d["caught_by"])


def test_antipode_H_corruptions_are_caught(bundles):
    for d in bd.fuzz(bundles(1), count=10, seed=5, targets=("antipode_H",)):
        assert d["detected"], d


def test_full_fuzz_detects_all_twenty(bundles):
    out = bd.fuzz(bundles(2), count=20, seed=0)
    assert len(out) == 20
    assert [d for d in out if not d["detected"]] == []


def test_fuzz_is_reproducible(bundles):
    a = bd.fuzz(bundles(1), count=5, seed=11)
    b = bd.fuzz(bundles(1), count=5, seed=11)
    assert a == b


def test_coaction_without_antipode_is_not_a_crossed_comodule(bundles):
    b = bundles(2)
    X = b.meta["crossed_comodule"]
    B, C, pi = X.B, X.A, X.phi
    VB = B.space
    plain = compose(tensor_map(B.m, identity(C.space)), tensor_map(B.id, B.id, pi),
                    permutation_map((VB, VB, VB), (0, 2, 1)), B.delta_left)
    Y = bd.CrossedComoduleData(C, B, pi, compose(plain, hp.section(pi)))
    failed = _failed(bd.check_crossed_comodule(Y))
    assert {"coaction_coassociative", "cc2_counit", "cc3_left_bracket"} <= failed


def test_ad_is_the_crossed_comodule_coaction(bundles):
    X = bundles(2).meta["crossed_comodule"]
    assert bd.check_crossed_comodule(X).ok


def test_json_round_trip_gives_the_same_report(bundles):
    b = bundles(1)
    R = bd.CoherentHopf2Bundle.from_json(json.loads(json.dumps(b.to_json())))
    assert R.dim == b.dim
    assert bd.axiom_summary(bd.full_report(R)) == bd.axiom_summary(bd.full_report(b))
    assert bd.check_strict(R)


def test_build_H_needs_commutative_base():
    Z2 = qg.cyclic_group(2)
    A = hp.group_algebra(Z2)
    Q8 = hp.group_algebra(bd.build_Gn(bd.cayley_dickson_cochain(2)))
    phi = LinearMap(Q8.space, A.space, fn=lambda x: dict(A.unit))
    X = bd.CrossedComoduleData(A, Q8, phi, bd.trivial_coaction(A, Q8))
    with pytest.raises(PreconditionFailed):
        bd.build_H(X)


def test_build_H_needs_central_image():
    Q8 = hp.group_algebra(bd.build_Gn(bd.cayley_dickson_cochain(2)))
    Z2 = hp.group_algebra(qg.cyclic_group(2))
    g = Q8.labels[2]
    phi = LinearMap(Z2.space, Q8.space, {Z2.labels[0]: dict(Q8.unit), Z2.labels[1]: {g: 1}})
    X = bd.CrossedComoduleData(Q8, Z2, phi, bd.trivial_coaction(Q8, Z2))
    with pytest.raises(PreconditionFailed):
        bd.build_H(X)


def test_build_H_refuses_non_crossed_comodule():
    A = hp.group_algebra(qg.cyclic_group(2))
    bad = LinearMap(A.space, tensor_space(A.space, A.space), {})
    X = bd.CrossedComoduleData(A, A, identity(A.space), bad)
    with pytest.raises(PreconditionFailed):
        bd.build_H(X)


def test_bundle_size_limit():
    with pytest.raises(SizeLimit):
        bd.gn_projection(bd.MAX_BUNDLE_N + 1)
