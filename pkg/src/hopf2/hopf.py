"""Hopf algebras, Hopf coquasigroups and Hopf quasigroups as structure tensors.

One record type, :class:`HopfStructure`, carries (m, 1, Δ, ε, S) plus a
``claims`` flag saying which axiom system it is supposed to satisfy. The
checkers never trust the flag.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import linear as la
from . import quasigroup as qg
from .errors import (DomainMismatch, InvalidInput, NotACoideal, NotAnIdeal,
                     PreconditionFailed)
from .linear import (K, LinearMap, Space, compose, identity, permutation_map,
                     tensor_map, tensor_space, vadd, vtensor)
from .report import Check, check_flag, check_maps, diff_witness, reporting

HOPF_ALGEBRA = "HopfAlgebra"
HOPF_COQUASIGROUP = "HopfCoquasigroup"
HOPF_QUASIGROUP = "HopfQuasigroup"
CLAIMS = (HOPF_ALGEBRA, HOPF_COQUASIGROUP, HOPF_QUASIGROUP)


class HopfStructure:
    def __init__(self, space, m, unit, delta, counit, antipode, claims, name=None):
        if claims not in CLAIMS:
            raise InvalidInput(f"unknown claim {claims!r}")
        V = space
        V2 = tensor_space(V, V)
        for f, dom, cod, what in ((m, V2, V, "m"), (delta, V, V2, "delta"),
                                  (counit, V, K, "counit"), (antipode, V, V, "antipode")):
            if f.domain != dom or f.codomain != cod:
                raise DomainMismatch(f"{what} has the wrong domain or codomain")
        for k in unit:
            if k not in V:
                raise DomainMismatch(f"unit mentions unknown label {k!r}")
        self.space = V
        self.m = m
        self.unit = la.vnorm(unit)
        self.delta = delta
        self.counit = counit
        self.antipode = antipode
        self.claims = claims
        self.name = name or V.name or "H"
        self.projection = None      # set by quotient_hopf: the map B -> this
        self._cache = {}

    # convenience -------------------------------------------------------
    @property
    def dim(self):
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    @property
    def V2(self):
        return tensor_space(self.space, self.space)

    @property
    def V3(self):
        return tensor_space(self.space, self.space, self.space)

    @property
    def id(self):
        if "id" not in self._cache:
            self._cache["id"] = identity(self.space)
        return self._cache["id"]

    @property
    def unit_map(self):
        return la.vector_as_map(self.space, self.unit)

    def mul(self, x, y):
        return self.m.apply(vtensor([(x, 1), (y, 1)]))

    def eps(self, x):
        return self.counit.apply(x).get((), 0)

    @property
    def tau(self):
        return permutation_map((self.space, self.space), (1, 0))

    @property
    def delta_left(self):
        """(Δ⊗id)Δ."""
        if "dl" not in self._cache:
            self._cache["dl"] = compose(tensor_map(self.delta, self.id), self.delta)
        return self._cache["dl"]

    @property
    def delta_right(self):
        """(id⊗Δ)Δ."""
        if "dr" not in self._cache:
            self._cache["dr"] = compose(tensor_map(self.id, self.delta), self.delta)
        return self._cache["dr"]

    def is_commutative(self):
        return self.m == compose(self.m, self.tau)

    def is_coassociative(self):
        return self.delta_left == self.delta_right

    def is_associative(self):
        return (compose(self.m, tensor_map(self.m, self.id))
                == compose(self.m, tensor_map(self.id, self.m)))

    def with_maps(self, **kw):
        """Copy with some structure maps replaced (used for perturbations)."""
        args = dict(space=self.space, m=self.m, unit=self.unit, delta=self.delta,
                    counit=self.counit, antipode=self.antipode, claims=self.claims,
                    name=self.name)
        args.update(kw)
        return HopfStructure(**args)

    # wire format -------------------------------------------------------
    def to_json(self):
        return {
            "dim": self.dim,
            "basis": [la.label_to_json(x) for x in self.labels],
            "claims": self.claims,
            "m": self.m.to_json(),
            "unit": [[la.label_to_json(k), la.scalar_str(c)] for k, c in sorted(
                self.unit.items(), key=lambda kv: self.space.index(kv[0]))],
            "delta": self.delta.to_json(),
            "counit": self.counit.to_json(),
            "antipode": self.antipode.to_json(),
        }

    @classmethod
    def from_json(cls, data, name=None):
        try:
            V = Space([la.label_from_json(x) for x in data["basis"]], name=name)
            if int(data["dim"]) != V.dim:
                raise InvalidInput("dim does not match the basis")
            V2 = tensor_space(V, V)
            m = LinearMap.from_json(data["m"], V2, V)
            unit = {la.label_from_json(k): la.scalar(Fraction(c)) for k, c in data["unit"]}
            delta = LinearMap.from_json(data["delta"], V, V2)
            counit = LinearMap.from_json(data["counit"], V, K)
            S = LinearMap.from_json(data["antipode"], V, V)
            claims = data.get("claims", HOPF_COQUASIGROUP)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed Hopf structure: {exc}") from exc
        return cls(V, m, unit, delta, counit, S, claims, name=name)

    def __repr__(self):
        return f"HopfStructure({self.name}, dim={self.dim}, {self.claims})"


def relabel(A, mapping, name=None):
    """Copy of A with basis labels renamed through ``mapping``."""
    V = Space([mapping[x] for x in A.labels], name=name or A.name)
    V2 = tensor_space(V, V)

    def mv(v, n):
        if n == 1:
            return {mapping[k]: c for k, c in v.items()}
        return {tuple(mapping[x] for x in k): c for k, c in v.items()}
    inv = {mapping[x]: x for x in A.labels}

    def lift(f, n_in, n_out):
        return lambda x: mv(f.col(inv[x] if n_in == 1 else tuple(inv[y] for y in x)), n_out)
    return HopfStructure(
        V,
        LinearMap(V2, V, fn=lift(A.m, 2, 1)),
        mv(A.unit, 1),
        LinearMap(V, V2, fn=lift(A.delta, 1, 2)),
        LinearMap(V, K, fn=lambda x: A.counit.col(inv[x])),
        LinearMap(V, V, fn=lift(A.antipode, 1, 1)),
        A.claims, name=name or A.name)


# -- builders ------------------------------------------------------------

def function_label(element_label):
    m = re.fullmatch(r"e\[(.*)\]", element_label)
    return f"f[{m.group(1)}]" if m else f"f[{element_label}]"


def function_algebra(Q, name=None):
    """k[Q]: delta functions, pointwise product, Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k."""
    if qg.validate(Q):
        raise InvalidInput(f"not a quasigroup: {qg.validate(Q)[0].message}")
    labels = [function_label(e) for e in Q.elements]
    V = Space(labels, name=name or f"k[{Q.name}]")
    V2 = tensor_space(V, V)
    T = Q.table
    n = Q.order
    fibres = {g: [] for g in range(n)}
    for h in range(n):
        for k in range(n):
            fibres[int(T[h, k])].append((labels[h], labels[k]))
    m = LinearMap(V2, V, fn=lambda xy: {xy[0]: 1} if xy[0] == xy[1] else {})
    delta = LinearMap(V, V2, {labels[g]: {p: 1 for p in fibres[g]} for g in range(n)})
    counit = LinearMap(V, K, {labels[Q.unit]: {(): 1}})
    S = LinearMap(V, V, {labels[g]: {labels[int(Q.inv[g])]: 1} for g in range(n)})
    unit = {x: 1 for x in labels}
    return HopfStructure(V, m, unit, delta, counit, S, HOPF_COQUASIGROUP, name=V.name)


def linear_extension(Q, name=None):
    """kQ: table product, grouplike coproduct, S(u) = u⁻¹."""
    if qg.validate(Q):
        raise InvalidInput(f"not a quasigroup: {qg.validate(Q)[0].message}")
    labels = list(Q.elements)
    V = Space(labels, name=name or f"k{Q.name}")
    V2 = tensor_space(V, V)
    idx = Q.index
    T = Q.table
    m = LinearMap(V2, V, fn=lambda xy: {labels[int(T[idx[xy[0]], idx[xy[1]]])]: 1})
    delta = LinearMap(V, V2, fn=lambda x: {(x, x): 1})
    counit = LinearMap(V, K, fn=lambda x: {(): 1})
    S = LinearMap(V, V, fn=lambda x: {labels[int(Q.inv[idx[x]])]: 1})
    return HopfStructure(V, m, {labels[Q.unit]: 1}, delta, counit, S, HOPF_QUASIGROUP, name=V.name)


def ground_hopf():
    """The ground field k as a one-dimensional Hopf algebra with basis {1}."""
    V = Space(["1"], name="k")
    V2 = tensor_space(V, V)
    return HopfStructure(V, LinearMap(V2, V, {("1", "1"): {"1": 1}}), {"1": 1},
                         LinearMap(V, V2, {"1": {("1", "1"): 1}}),
                         LinearMap(V, K, {"1": {(): 1}}), identity(V), HOPF_ALGEBRA, name="k")


def group_algebra(G, name=None):
    if not qg.is_associative(G):
        raise InvalidInput("group_algebra needs an associative table")
    return linear_extension(G, name=name).with_maps(claims=HOPF_ALGEBRA)


# -- axiom checks ----------------------------------------------------------

def _algebra_checks(rep, A, associative=True):
    I, m, u = A.id, A.m, A.unit_map
    if associative:
        rep.add(check_maps("associativity", compose(m, tensor_map(m, I)), compose(m, tensor_map(I, m))))
    rep.add(check_maps("left_unit", compose(m, tensor_map(u, I)), I))
    rep.add(check_maps("right_unit", compose(m, tensor_map(I, u)), I))


def _bialgebra_checks(rep, A, coassociative):
    I, D, e, m = A.id, A.delta, A.counit, A.m
    if coassociative:
        rep.add(check_maps("coassociativity", A.delta_left, A.delta_right))
    rep.add(check_maps("counit_left", compose(tensor_map(e, I), D), I))
    rep.add(check_maps("counit_right", compose(tensor_map(I, e), D), I))
    rep.add(check_maps("coproduct_multiplicative", compose(D, m),
                       la.product_of_images(D, [m, m])))
    rep.add(check_maps("coproduct_unital", compose(D, A.unit_map),
                       la.vector_as_map(A.V2, vtensor([(A.unit, 1), (A.unit, 1)]))))
    rep.add(check_maps("counit_multiplicative", compose(e, m), tensor_map(e, e)))
    rep.add(check_maps("counit_unital", compose(e, A.unit_map), identity(K)))


def coquasigroup_antipode_maps(B):
    """The four maps B -> B⊗B that must equal 1⊗id or id⊗1."""
    I, S, m = B.id, B.antipode, B.m
    dr, dl = B.delta_right, B.delta_left
    return {
        "antipode_S_left_mid": compose(tensor_map(m, I), tensor_map(S, I, I), dr),
        "antipode_S_mid_left": compose(tensor_map(m, I), tensor_map(I, S, I), dr),
        "antipode_S_mid_right": compose(tensor_map(I, m), tensor_map(I, S, I), dl),
        "antipode_S_right_right": compose(tensor_map(I, m), tensor_map(I, I, S), dl),
    }


def check_hopf_coquasigroup(B):
    with reporting(f"hopf-coquasigroup {B.name}") as rep:
        _algebra_checks(rep, B)
        _bialgebra_checks(rep, B, coassociative=False)
        one_id = tensor_map(B.unit_map, B.id)      # b -> 1⊗b
        id_one = tensor_map(B.id, B.unit_map)      # b -> b⊗1
        maps = coquasigroup_antipode_maps(B)
        for name, f in maps.items():
            target = one_id if name in ("antipode_S_left_mid", "antipode_S_mid_left") else id_one
            rep.add(check_maps(name, f, target))
    return rep


def check_hopf_quasigroup(A):
    with reporting(f"hopf-quasigroup {A.name}") as rep:
        _algebra_checks(rep, A, associative=False)
        _bialgebra_checks(rep, A, coassociative=True)
        I, S, m, D, e = A.id, A.antipode, A.m, A.delta, A.counit
        m_r = compose(m, tensor_map(I, m))         # a(bc)
        m_l = compose(m, tensor_map(m, I))         # (ab)c
        e_id = tensor_map(e, I)
        id_e = tensor_map(I, e)
        rep.add(check_maps("antipode_S_left", compose(m_r, tensor_map(S, I, I), tensor_map(D, I)), e_id))
        rep.add(check_maps("antipode_S_mid_left", compose(m_r, tensor_map(I, S, I), tensor_map(D, I)), e_id))
        rep.add(check_maps("antipode_S_mid_right", compose(m_l, tensor_map(I, S, I), tensor_map(I, D)), id_e))
        rep.add(check_maps("antipode_S_right", compose(m_l, tensor_map(I, I, S), tensor_map(I, D)), id_e))
    return rep


def check_hopf_algebra(A):
    with reporting(f"hopf-algebra {A.name}") as rep:
        _algebra_checks(rep, A)
        _bialgebra_checks(rep, A, coassociative=True)
        ue = compose(A.unit_map, A.counit)
        rep.add(check_maps("antipode_left", compose(A.m, tensor_map(A.antipode, A.id), A.delta), ue))
        rep.add(check_maps("antipode_right", compose(A.m, tensor_map(A.id, A.antipode), A.delta), ue))
    return rep


def check_claims(A):
    return {HOPF_ALGEBRA: check_hopf_algebra, HOPF_COQUASIGROUP: check_hopf_coquasigroup,
            HOPF_QUASIGROUP: check_hopf_quasigroup}[A.claims](A)


def antipode_properties(B, require=True):
    if require and not check_hopf_coquasigroup(B).ok:
        raise PreconditionFailed("not a Hopf coquasigroup")
    with reporting(f"antipode properties {B.name}") as rep:
        I, S, m, D = B.id, B.antipode, B.m, B.delta
        ue = compose(B.unit_map, B.counit)
        rep.add(check_maps("h1_S_h2", compose(m, tensor_map(I, S), D), ue))
        rep.add(check_maps("S_h1_h2", compose(m, tensor_map(S, I), D), ue))
        rep.add(check_maps("anti_multiplicative", compose(S, m), compose(m, tensor_map(S, S), B.tau)))
        rep.add(check_maps("anti_comultiplicative", compose(D, S), compose(tensor_map(S, S), B.tau, D)))
    return rep


# -- coassociator ---------------------------------------------------------

def coassociator_beta(B, require=True):
    """β(h) = h₁₁ S(h₂)₁₁ ⊗ h₁₂₁ S(h₂)₁₂ ⊗ h₁₂₂ S(h₂)₂, as a map B -> B⊗B⊗B."""
    if require and not check_hopf_coquasigroup(B).ok:
        raise PreconditionFailed("not a Hopf coquasigroup")
    if "beta" not in B._cache:
        X = B.delta_right                     # h -> h₁ ⊗ h₂₁ ⊗ h₂₂
        Y = compose(B.delta_left, B.antipode)  # h -> S(h)₁₁ ⊗ S(h)₁₂ ⊗ S(h)₂
        B._cache["beta"] = la.convolve(X, Y, B.delta, [B.m] * 3)
    return B._cache["beta"]


def trivial_coassociator(B):
    """h -> ε(h) 1⊗1⊗1."""
    one3 = vtensor([(B.unit, 1)] * 3)
    return compose(la.vector_as_map(B.V3, one3), B.counit)


def coassociator_report(B):
    beta = coassociator_beta(B)
    with reporting(f"coassociator {B.name}") as rep:
        lhs = la.convolve(beta, B.delta_left, B.delta, [B.m] * 3)
        rep.add(check_maps("coassociator_relation", lhs, B.delta_right))
        triv = check_maps("beta_trivial", beta, trivial_coassociator(B))
        coas = check_maps("coassociative", B.delta_left, B.delta_right)
        rep.add(Check("beta_trivial_iff_coassociative", triv.passed == coas.passed,
                      {"beta_trivial": triv.passed, "coassociative": coas.passed}))
    rep.beta_trivial = triv.passed
    return rep


# -- coassociative pairs --------------------------------------------------

@dataclass
class CoassociativePairData:
    A: HopfStructure
    B: HopfStructure
    phi: LinearMap

    def __post_init__(self):
        if self.phi.domain != self.B.space or self.phi.codomain != self.A.space:
            raise DomainMismatch("phi must map B to A")


def morphism_checks(rep, src, dst, f, prefix=""):
    rep.add(check_maps(prefix + "algebra_map", compose(f, src.m), compose(dst.m, tensor_map(f, f))))
    rep.add(check_maps(prefix + "unital", compose(f, src.unit_map), dst.unit_map))
    rep.add(check_maps(prefix + "comultiplicative", compose(dst.delta, f), compose(tensor_map(f, f), src.delta)))
    rep.add(check_maps(prefix + "counital", compose(dst.counit, f), src.counit))


def check_coassociative_pair(P):
    A, B, phi = P.A, P.B, P.phi
    with reporting(f"coassociative pair ({A.name}, {B.name})") as rep:
        rep.add(Check("A_hopf_algebra", check_hopf_algebra(A).ok))
        rep.add(Check("B_hopf_coquasigroup", check_hopf_coquasigroup(B).ok))
        morphism_checks(rep, B, A, phi, "phi_")
        I = B.id
        dl, dr = B.delta_left, B.delta_right
        for slot in range(3):
            legs = [I, I, I]
            legs[slot] = phi
            L = tensor_map(*legs)
            rep.add(check_maps(f"phi_passes_leg_{slot + 1}", compose(L, dl), compose(L, dr)))
    return rep


def iterated_coproduct(B, tree):
    """Iterated coproduct shaped like a product tree (leaf = identity)."""
    if tree == "x":
        return B.id
    return compose(tensor_map(iterated_coproduct(B, tree[0]), iterated_coproduct(B, tree[1])), B.delta)


def iterated_coproduct_witness(P, n):
    """Check the φ-passthrough property for all n-th iterated coproducts.

    For every pair of trees and slot where ε at that slot makes them agree,
    φ at that slot must make them agree too. Returns a failing (I, J, slot).
    """
    A, B, phi = P.A, P.B, P.phi
    trees = qg.product_trees(n)
    maps = [iterated_coproduct(B, t) for t in trees]
    I = B.id
    for slot in range(n + 1):
        def leg(f):
            legs = [I] * (n + 1)
            legs[slot] = f
            return tensor_map(*legs)
        with_eps = [compose(leg(B.counit), f) for f in maps]
        with_phi = [compose(leg(phi), f) for f in maps]
        for i in range(len(trees)):
            for j in range(i + 1, len(trees)):
                if with_eps[i] == with_eps[j] and with_phi[i] != with_phi[j]:
                    return (qg.tree_str(trees[i]), qg.tree_str(trees[j]), slot)
    return None


# -- dual pairings, nucleus, ideal, quotient ------------------------------

@dataclass
class DualPairingData:
    B: HopfStructure
    A: HopfStructure
    pairing: LinearMap                 # B⊗A -> k

    def value(self, b, a):
        return self.pairing.col((b, a)).get((), 0)

    def rows(self):
        """b -> {a: <b, a>}."""
        out = {b: {} for b in self.B.labels}
        for b in self.B.labels:
            for a in self.A.labels:
                v = self.value(b, a)
                if v:
                    out[b][a] = v
        return out


def canonical_pairing(Q):
    B = function_algebra(Q)
    A = linear_extension(Q)
    lab = {e: function_label(e) for e in Q.elements}
    back = {v: k for k, v in lab.items()}
    pairing = LinearMap(tensor_space(B.space, A.space), K,
                        fn=lambda ba: {(): 1} if back[ba[0]] == ba[1] else {})
    return DualPairingData(B, A, pairing)


def check_pairing(P):
    B, A, pr = P.B, P.A, P.pairing
    with reporting(f"pairing <{B.name}, {A.name}>") as rep:
        VB, VA = B.space, A.space
        # <Δb, a⊗a'> = <b, aa'>
        shuffle = permutation_map((VB, VB, VA, VA), (0, 2, 1, 3))
        lhs = compose(tensor_map(pr, pr), shuffle, tensor_map(B.delta, A.id, A.id))
        rhs = compose(pr, tensor_map(B.id, A.m))
        rep.add(check_maps("coproduct_vs_product", lhs, rhs))
        # <b⊗b', Δa> = <bb', a>
        shuffle2 = permutation_map((VB, VB, VA, VA), (0, 2, 1, 3))
        lhs = compose(tensor_map(pr, pr), shuffle2, tensor_map(B.id, B.id, A.delta))
        rhs = compose(pr, tensor_map(B.m, A.id))
        rep.add(check_maps("product_vs_coproduct", lhs, rhs))
        rep.add(check_maps("counit_B", compose(pr, tensor_map(B.id, A.unit_map)), B.counit))
        rep.add(check_maps("counit_A", compose(pr, tensor_map(B.unit_map, A.id)), A.counit))
        rows = P.rows()
        mat_rank = la.rank(list(rows.values()), A.space)
        rep.add(check_flag("nondegenerate", mat_rank == A.dim == B.dim,
                           {"rank": mat_rank, "dims": [B.dim, A.dim]}))
    return rep


@dataclass
class NucleusReport:
    solution_basis: list          # basis of {a : a(uv)=(au)v, ...}
    labels_in: list               # basis labels lying in that space
    delta_stable: bool            # Δ(N) ⊆ N⊗N for the full solution space
    hopf_basis: list              # largest Δ-stable subspace of the solution space

    @property
    def dim(self):
        return len(self.solution_basis)

    @property
    def hopf_dim(self):
        return len(self.hopf_basis)


def _nucleus_map(A):
    V = A.space
    which = Space(["left", "middle", "right"], name="which")
    cod = tensor_space(which, V, V, V)
    labels = A.labels

    def fn(a):
        out = {}
        ea = {a: 1}
        for u in labels:
            eu = {u: 1}
            au = A.mul(ea, eu)
            ua = A.mul(eu, ea)
            for v in labels:
                ev = {v: 1}
                uv = A.mul(eu, ev)
                terms = (
                    ("left", la.vsub(A.mul(ea, uv), A.mul(au, ev))),
                    ("middle", la.vsub(A.mul(eu, A.mul(ea, ev)), A.mul(ua, ev))),
                    ("right", la.vsub(A.mul(eu, A.mul(ev, ea)), A.mul(uv, ea))),
                )
                for w, vec in terms:
                    for k, c in vec.items():
                        out[(w, u, v, k)] = c
        return out
    return LinearMap(V, cod, fn=fn)


def _restricted_kernel(space, basis, fn):
    """{Σλ_j w_j : fn(Σλ_j w_j) = 0}, with fn linear and vector-valued."""
    idx = Space(range(len(basis)), name="coords")
    sample = {}
    cols = {}
    for j, w in enumerate(basis):
        cols[j] = fn(w)
        sample.update(cols[j])
    cod = Space(list(dict.fromkeys(sample)), name="eqs") if sample else Space([0])
    L = LinearMap(idx, cod, cols)
    out = []
    for lam in la.kernel(L):
        v = {}
        for j, c in lam.items():
            vadd(v, basis[j], c)
        out.append(la.vnorm(v))
    return la.span(space, out).relations if out else []


def largest_subcoalgebra(A, basis):
    """Largest W inside span(basis) with Δ(W) ⊆ W⊗W."""
    W = list(basis)
    while True:
        q = la.span(A.space, W)
        proj = LinearMap(A.space, A.space, fn=lambda x, q=q: q.project({x: 1}))
        P1 = compose(tensor_map(proj, A.id), A.delta)
        P2 = compose(tensor_map(A.id, proj), A.delta)
        new = _restricted_kernel(A.space, W, lambda w: {**{("L",) + (k if isinstance(k, tuple) else (k,)): c for k, c in P1.apply(w).items()},
                                                         **{("R",) + (k if isinstance(k, tuple) else (k,)): c for k, c in P2.apply(w).items()}})
        if len(new) == len(W):
            return new
        W = new
        if not W:
            return []


def nucleus_NA(A):
    """Solve a(uv) = (au)v, u(av) = (ua)v, u(va) = (uv)a over all basis u, v."""
    if A.claims not in (HOPF_QUASIGROUP, HOPF_ALGEBRA):
        raise PreconditionFailed("nucleus_NA expects a Hopf quasigroup")
    sol = la.kernel(_nucleus_map(A))
    q = la.span(A.space, sol)
    labels_in = [x for x in A.labels if q.is_zero({x: 1})]
    hopf = largest_subcoalgebra(A, sol)
    return NucleusReport(sol, labels_in, len(hopf) == len(sol), hopf)


@dataclass
class IdealReport:
    basis: list
    is_ideal: bool
    is_coideal: bool
    ideal_witness: object = None
    coideal_witness: object = None


def annihilator(P, vectors):
    """{b in B : <b, a> = 0 for all a in vectors}."""
    rows = P.rows()
    cod = Space(range(len(vectors)), name="constraints") if vectors else Space([0])
    cols = {}
    for b in P.B.labels:
        col = {}
        for j, a in enumerate(vectors):
            v = sum(rows[b].get(x, 0) * c for x, c in a.items())
            if v:
                col[j] = v
        cols[b] = col
    return la.kernel(LinearMap(P.B.space, cod, cols))


def ideal_witness(B, basis):
    q = la.span(B.space, basis)
    for i in basis:
        for b in B.labels:
            for prod in (B.mul(i, {b: 1}), B.mul({b: 1}, i)):
                if not q.is_zero(prod):
                    return {"element": la.label_to_json(b), "product": prod}
    return None


def coideal_witness(B, basis):
    """Δ(I) ⊆ I⊗B + B⊗I iff (q⊗q)Δ(i) = 0, q the projection to B/I."""
    q = la.span(B.space, basis)
    proj = LinearMap(B.space, B.space, fn=lambda x: q.project({x: 1}))
    qq = tensor_map(proj, proj)
    for j, i in enumerate(basis):
        img = qq.apply(B.delta.apply(i))
        if img:
            return {"basis_index": j, "residue": la.vnorm(img)}
        if B.eps(i):
            return {"basis_index": j, "counit": B.eps(i)}
    return None


def ideal_IB(P, NA):
    """Annihilator of N_A in B, with ideal and coideal verification.

    ``NA`` is either a NucleusReport (its Δ-stable part is used) or a list
    of vectors.
    """
    vectors = NA.hopf_basis if isinstance(NA, NucleusReport) else list(NA)
    basis = annihilator(P, vectors)
    iw = ideal_witness(P.B, basis)
    cw = coideal_witness(P.B, basis)
    return IdealReport(basis, iw is None, cw is None, iw, cw)


def quotient_hopf(B, I):
    """C = B / span(I) with the induced structure; C.projection is B -> C."""
    basis = I.basis if isinstance(I, IdealReport) else list(I)
    w = ideal_witness(B, basis)
    if w is not None:
        raise NotAnIdeal("not an ideal", w)
    w = coideal_witness(B, basis)
    if w is not None:
        raise NotACoideal("not a coideal", w)
    q = la.span(B.space, basis)
    for i in basis:
        if not q.is_zero(B.antipode.apply(i)):
            raise PreconditionFailed("S(I) is not contained in I", i)
    pivots = set(q.pivots)
    Cspace = Space([x for x in B.labels if x not in pivots], name=f"{B.name}/I")
    C2 = tensor_space(Cspace, Cspace)
    phi = LinearMap(B.space, Cspace, fn=lambda x: q.project({x: 1}))
    proj_vec = lambda v: q.project(v)
    m = LinearMap(C2, Cspace, fn=lambda xy: proj_vec(B.m.col(xy)))
    delta = LinearMap(Cspace, C2, fn=lambda x: tensor_map(phi, phi).apply(B.delta.col(x)))
    counit = LinearMap(Cspace, K, fn=lambda x: B.counit.col(x))
    S = LinearMap(Cspace, Cspace, fn=lambda x: proj_vec(B.antipode.col(x)))
    C = HopfStructure(Cspace, m, proj_vec(B.unit), delta, counit, S, HOPF_COQUASIGROUP, name=Cspace.name)
    if C.is_coassociative():
        C.claims = HOPF_ALGEBRA
    C.projection = phi
    return C


def section(f):
    """A right inverse of a surjective map, as a LinearMap (raises if not onto)."""
    ech = la._Echelon(f.codomain, track=True)
    for x in f.domain.labels:
        ech.add(f.col(x), {x: 1})
    cols = {}
    for y in f.codomain.labels:
        v, tag = ech.reduce({y: 1}, {})
        if v:
            raise PreconditionFailed(f"map is not surjective at {y!r}")
        cols[y] = la.vscale(tag, -1)
    return LinearMap(f.codomain, f.domain, cols)


# -- quasi-coassociativity -------------------------------------------------

def ad_variants(B, phi):
    """Both bracketings of c₁ S(c₃) ⊗ [c₂] as maps B -> B⊗C."""
    VB = B.space
    S, I, m = B.antipode, B.id, B.m
    IC = identity(phi.codomain)
    # c₁₁ S(c₂) ⊗ [c₁₂]
    ad1 = compose(tensor_map(m, IC), tensor_map(I, S, phi),
                  permutation_map((VB, VB, VB), (0, 2, 1)), B.delta_left)
    # c₁ S(c₂₂) ⊗ [c₂₁]
    ad2 = compose(tensor_map(m, IC), tensor_map(I, S, phi),
                  permutation_map((VB, VB, VB), (0, 2, 1)), B.delta_right)
    return ad1, ad2


@dataclass
class QuasiCoassocReport:
    C: HopfStructure
    phi: LinearMap
    kernel_basis: list
    checks: dict = field(default_factory=dict)
    report: object = None

    @property
    def ok(self):
        return all(self.checks.values())


def check_quasi_coassociative(P, require=True):
    C, B, phi = P.A, P.B, P.phi
    if require and not check_coassociative_pair(P).ok:
        raise PreconditionFailed("not a coassociative pair")
    with reporting(f"quasi-coassociative {B.name} -> {C.name}") as rep:
        r = la.image_rank(phi)
        rep.add(check_flag("surjective", r == C.dim, {"rank": r, "dim": C.dim}))
        I = la.kernel(phi)
        VB = B.space
        S, Iid, m = B.antipode, B.id, B.m
        to_C2 = tensor_map(Iid, phi)
        # i₁₁ S(i₂) ⊗ i₁₂ and i₁ S(i₂₂) ⊗ i₂₁, second leg pushed to C
        x1 = compose(tensor_map(m, Iid), tensor_map(Iid, S, Iid),
                     permutation_map((VB, VB, VB), (0, 2, 1)), B.delta_left)
        x2 = compose(tensor_map(m, Iid), tensor_map(Iid, S, Iid),
                     permutation_map((VB, VB, VB), (0, 2, 1)), B.delta_right)
        for name, f in (("kernel_left_bracket", x1), ("kernel_right_bracket", x2)):
            bad = next((j for j, i in enumerate(I) if to_C2.apply(f.apply(i))), None)
            rep.add(check_flag(name, bad is None, {"kernel_basis_index": bad}))
        beta = coassociator_beta(B, require=False)
        bad = next((j for j, i in enumerate(I) if beta.apply(i)), None)
        rep.add(check_flag("kernel_in_ker_beta", bad is None, {"kernel_basis_index": bad}))
        ad1, ad2 = ad_variants(B, phi)
        rep.add(check_maps("ad_bracketings_agree", ad1, ad2))
    out = QuasiCoassocReport(C, phi, I, {c.name: c.passed for c in rep.checks}, rep)
    return out


# -- beta star -------------------------------------------------------------

def beta_star(A, require=True):
    """β*(u⊗v⊗w) = (u₁(v₁w₁))(S(w₂)(S(v₂)S(u₂))) as a map A⊗A⊗A -> A."""
    if require and A.claims not in (HOPF_QUASIGROUP, HOPF_ALGEBRA):
        raise PreconditionFailed("beta_star expects a Hopf quasigroup")
    D, S = A.delta, A.antipode
    mul = A.mul

    def fn(uvw):
        u, v, w = uvw
        acc = {}
        for (u1, u2), cu in D.col(u).items():
            for (v1, v2), cv in D.col(v).items():
                for (w1, w2), cw in D.col(w).items():
                    left = mul({u1: 1}, mul({v1: 1}, {w1: 1}))
                    right = mul(S.col(w2), mul(S.col(v2), S.col(u2)))
                    vadd(acc, mul(left, right), cu * cv * cw)
        return acc
    return LinearMap(A.V3, A.space, fn=fn)


def beta_duality_witness(P, beta_B=None, beta_A=None):
    """First (b, u, v, w) with <β(b), u⊗v⊗w> != <b, β*(u⊗v⊗w)>."""
    B, A = P.B, P.A
    beta_B = beta_B or coassociator_beta(B, require=False)
    beta_A = beta_A or beta_star(A, require=False)
    rows = P.rows()
    lhs = {}
    for b in B.labels:
        acc = {}
        for (x, y, z), c in beta_B.col(b).items():
            for u, p in rows[x].items():
                for v, q in rows[y].items():
                    for w, r in rows[z].items():
                        key = (u, v, w)
                        val = acc.get(key, 0) + c * p * q * r
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
        lhs[b] = acc
    for t in A.V3.labels:
        img = beta_A.col(t)
        for b in B.labels:
            right = sum(rows[b].get(a, 0) * c for a, c in img.items())
            if lhs[b].get(t, 0) != right:
                return (b,) + t
    return None


def beta_star_report(P, NA=None):
    A = P.A
    bs = beta_star(A)
    NA = NA or nucleus_NA(A)
    with reporting(f"beta-star {A.name}") as rep:
        w = beta_duality_witness(P, beta_A=bs)
        rep.add(check_flag("duality", w is None, w and list(w)))
        q = la.span(A.space, NA.hopf_basis)
        bad = next((t for t in A.V3.labels if not q.is_zero(bs.col(t))), None)
        rep.add(check_flag("image_in_nucleus", bad is None, bad and list(bad)))
        D, S = A.delta, A.antipode
        bad = None
        for a in A.labels:
            for n in NA.hopf_basis:
                acc = {}
                for (a1, a2), c in D.col(a).items():
                    vadd(acc, A.mul(A.mul({a1: 1}, n), S.col(a2)), c)
                if not q.is_zero(acc):
                    bad = a
                    break
            if bad:
                break
        rep.add(check_flag("nucleus_conjugation_stable", bad is None, bad))
    return rep
