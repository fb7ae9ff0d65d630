"""Central Hopf algebroids over a commutative base.

Balanced tensors H⊗_B H are handled as representatives in H⊗H together
with a :class:`~hopf2.linear.QuotientSpace` holding the balancing relations
h t(b)⊗h' − h⊗s(b)h'. Every identity with a ⊗_B-valued side is compared in
that quotient; every map out of H⊗_B H is first checked to kill the
relations.
"""

from dataclasses import dataclass

from . import linear as la
from .linear import (LinearMap, compose, identity, permutation_map,
                     tensor_map, tensor_space, vadd)
from .report import check_flag, check_maps, check_maps_mod, reporting


@dataclass
class CentralHopfAlgebroidData:
    H: object                 # anything with .space, .m, .unit (e.g. a HopfStructure)
    B: object                 # HopfStructure; only its algebra part is used
    s: LinearMap              # B -> H
    t: LinearMap              # B -> H
    delta: LinearMap          # H -> H⊗H (representatives)
    counit: LinearMap         # H -> B
    antipode: LinearMap       # H -> H
    _q: object = None

    @property
    def space(self):
        return self.H.space

    @property
    def HH(self):
        return tensor_space(self.space, self.space)

    @property
    def quotientHH(self):
        """H⊗_B H as H⊗H modulo span{h t(b)⊗h' − h⊗s(b)h'}."""
        if self._q is None:
            self._q = balanced_quotient(self.H, self.B, self.s, self.t)
        return self._q

    def mul(self, x, y):
        return self.H.m.apply(la.vtensor([(x, 1), (y, 1)]))

    def s_of(self, b):
        return self.s.col(b)

    def t_of(self, b):
        return self.t.col(b)


def balanced_quotient(H, B, s, t):
    """Relations h t(b)⊗h' − h⊗s(b)h' over all basis triples (h, b, h')."""
    V = H.space
    HH = tensor_space(V, V)
    q = la.QuotientSpace(HH)
    m = H.m
    prod = {}

    def mul_basis_vec(x, v, left):
        out = {}
        for y, c in v.items():
            key = (x, y) if left else (y, x)
            if key not in prod:
                prod[key] = m.col(key)
            vadd(out, prod[key], c)
        return out
    for b in B.labels:
        tb, sb = t.col(b), s.col(b)
        for h in V.labels:
            ht = mul_basis_vec(h, tb, left=True)          # h t(b)
            for hp in V.labels:
                sh = mul_basis_vec(hp, sb, left=False)    # s(b) h'
                rel = la.vtensor([(ht, 1), ({hp: 1}, 1)])
                vadd(rel, la.vtensor([({h: 1}, 1), (sh, 1)]), -1)
                if rel:
                    q.add_relation(rel)
    return q


def projection_map(q):
    """The normal-form projection of a QuotientSpace as an endomorphism."""
    return LinearMap(q.ambient, q.ambient, fn=lambda x: q.project({x: 1}))


def _kills(q, f):
    """First relation basis vector that f does not send to zero."""
    for j, r in enumerate(q.relations):
        if f.apply(r):
            return j
    return None


def _bimodule_action(D):
    """(b, h, b') -> s(b) t(b') h as a map B⊗H⊗B -> H."""
    V, VB = D.space, D.B.space
    m = D.H.m
    return compose(m, tensor_map(m, identity(V)), tensor_map(D.s, D.t, identity(V)),
                   permutation_map((VB, V, VB), (0, 2, 1)))


def check_bring_coring(D):
    H, B = D.H, D.B
    V, VB = D.space, B.space
    I, IB = identity(V), identity(VB)
    m = H.m
    q = D.quotientHH
    with reporting("B-ring / B-coring") as rep:
        for name, f in (("s", D.s), ("t", D.t)):
            rep.add(check_maps(f"{name}_algebra_map", compose(f, B.m), compose(m, tensor_map(f, f))))
            rep.add(check_maps(f"{name}_unital", compose(f, B.unit_map), la.vector_as_map(V, H.unit)))
            rep.add(check_maps(f"{name}_central", compose(m, tensor_map(f, I)),
                               compose(m, tensor_map(I, f), permutation_map((VB, V), (1, 0)))))
        act = _bimodule_action(D)
        one = B.unit_map
        left = compose(act, tensor_map(IB, I, one))      # b▷h
        right = compose(act, tensor_map(one, I, IB))     # h◁b
        rep.add(check_maps("bimodule_left_action", compose(left, tensor_map(IB, left)),
                           compose(left, tensor_map(B.m, I))))
        rep.add(check_maps("bimodule_right_action", compose(right, tensor_map(right, IB)),
                           compose(right, tensor_map(I, B.m))))
        rep.add(check_maps("bimodule_commuting", compose(right, tensor_map(left, IB)), act))
        # Δ(b▷h◁b') = s(b)h1 ⊗ t(b')h2 in H⊗_B H
        lhs = compose(D.delta, act)
        left = compose(m, tensor_map(D.s, I))
        right = compose(m, tensor_map(D.t, I))
        rhs = compose(tensor_map(left, right),
                      permutation_map((VB, V, V, VB), (0, 1, 3, 2)),
                      tensor_map(IB, D.delta, IB))
        rep.add(check_maps_mod("delta_bimodule_map", lhs, rhs, q))
        # ε(b▷h◁b') = b ε(h) b'
        lhs = compose(D.counit, act)
        rhs = compose(B.m, tensor_map(B.m, IB), tensor_map(IB, D.counit, IB))
        rep.add(check_maps("counit_bimodule_map", lhs, rhs))
        rep.add(_coassociativity(D))
        # counit laws through s and t
        eps_left = compose(m, tensor_map(compose(D.s, D.counit), I))        # x⊗y -> s(ε(x)) y
        eps_right = compose(m, tensor_map(compose(D.t, D.counit), I),
                            permutation_map((V, V), (1, 0)))                 # x⊗y -> t(ε(y)) x
        for name, f in (("counit_left", eps_left), ("counit_right", eps_right)):
            bad = _kills(q, f)
            rep.add(check_flag(f"{name}_kills_relations", bad is None, {"relation_index": bad}))
            rep.add(check_maps(name, compose(f, D.delta), I))
    return rep


def _coassociativity(D):
    V = D.space
    I = identity(V)
    dl = compose(tensor_map(D.delta, I), D.delta)
    dr = compose(tensor_map(I, D.delta), D.delta)
    c = check_maps("coassociativity", dl, dr)
    if c.passed:
        return c
    # equality of representatives failed; compare in H⊗_B H⊗_B H
    q = D.quotientHH
    q3 = la.QuotientSpace(tensor_space(V, V, V))
    for r in q.relations:
        for h in V.labels:
            q3.add_relation(la.vtensor([(r, 2), ({h: 1}, 1)]))
            q3.add_relation(la.vtensor([({h: 1}, 1), (r, 2)]))
    return check_maps_mod("coassociativity", dl, dr, q3)


def check_takeuchi(D):
    H, B = D.H, D.B
    V, VB = D.space, B.space
    I = identity(V)
    m = H.m
    q = D.quotientHH
    with reporting("Takeuchi product") as rep:
        # Δ(h)(t(b)⊗1) - Δ(h)(1⊗s(b)) vanishes in H⊗_B H
        mt = compose(m, tensor_map(I, D.t))       # h⊗b -> h t(b)
        ms = compose(m, tensor_map(I, D.s))
        flip = permutation_map((V, V, VB), (0, 2, 1))
        lhs = compose(tensor_map(mt, I), flip, tensor_map(D.delta, identity(VB)))
        rhs = compose(tensor_map(I, ms), tensor_map(D.delta, identity(VB)))
        rep.add(check_maps_mod("takeuchi_membership", lhs, rhs, q))
        rep.add(check_maps_mod("delta_multiplicative", compose(D.delta, m),
                               la.product_of_images(D.delta, [m, m]), q))
        one = la.vector_as_map(V, H.unit)
        rep.add(check_maps_mod("delta_unital", compose(D.delta, one),
                               la.vector_as_map(D.HH, la.vtensor([(H.unit, 1), (H.unit, 1)])), q))
        rep.add(check_maps("counit_unital", compose(D.counit, one), B.unit_map))
        rep.add(check_maps("counit_left_linear", compose(D.counit, m, tensor_map(D.s, I)),
                           compose(B.m, tensor_map(identity(VB), D.counit))))
        eps_m = compose(D.counit, m)
        via_s = compose(D.counit, m, tensor_map(I, compose(D.s, D.counit)))
        via_t = compose(D.counit, m, tensor_map(I, compose(D.t, D.counit)))
        rep.add(check_maps("counit_character_s", via_s, eps_m))
        rep.add(check_maps("counit_character_t", via_t, eps_m))
    return rep


def check_antipode(D):
    H, B = D.H, D.B
    V, VB = D.space, B.space
    I, IB = identity(V), identity(VB)
    m, S = H.m, D.antipode
    q = D.quotientHH
    with reporting("algebroid antipode") as rep:
        # S(t(b) h s(b')) = t(b') S(h) s(b)
        inner = compose(m, tensor_map(m, I), tensor_map(D.t, I, D.s))
        lhs = compose(S, inner)
        rhs = compose(m, tensor_map(m, I), tensor_map(D.t, S, D.s),
                      permutation_map((VB, V, VB), (2, 1, 0)))
        rep.add(check_maps("twisted_bilinear", lhs, rhs))
        mu_l = compose(m, tensor_map(S, I))
        mu_r = compose(m, tensor_map(I, S))
        for name, f, target in (("mu_L_law", mu_l, compose(D.t, D.counit)),
                                ("mu_R_law", mu_r, compose(D.s, D.counit))):
            bad = _kills(q, f)
            rep.add(check_flag(f"{name}_representative_independent", bad is None,
                               {"relation_index": bad}))
            rep.add(check_maps(name, compose(f, D.delta), target))
        rep.add(check_maps("S_of_s_is_t", compose(S, D.s), D.t))
        rep.add(check_maps("S_of_t_is_s", compose(S, D.t), D.s))
        rep.add(check_maps("counit_algebra_map", compose(D.counit, m),
                           compose(B.m, tensor_map(D.counit, D.counit))))
    return rep


def check_algebroid(D):
    """All three reports keyed by section."""
    return {"coring": check_bring_coring(D), "takeuchi": check_takeuchi(D),
            "antipode": check_antipode(D)}


def over_ground_field(A):
    """A Hopf algebra as a central Hopf algebroid over k (s = t = unit)."""
    from .hopf import ground_hopf
    k = ground_hopf()
    one = next(iter(k.labels))
    unit = LinearMap(k.space, A.space, {one: A.unit})
    counit = LinearMap(A.space, k.space, fn=lambda x: {one: c for c in A.counit.col(x).values()})
    return CentralHopfAlgebroidData(A, k, unit, unit, A.delta, counit, A.antipode)
