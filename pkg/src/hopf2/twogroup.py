"""Crossed modules, strict 2-groups and the coherent 2-group of a quasigroup.

A 2-group is stored as integer tables: objects form a quasigroup under ⊗,
morphisms form a quasigroup under ⊗, and ``comp[x, y]`` holds x∘y (apply y
first) or -1 when s(x) != t(y).
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from . import quasigroup as qg
from .errors import PreconditionFailed
from .quasigroup import FiniteQuasigroup, Violation


@dataclass
class CrossedModule:
    M: FiniteQuasigroup
    N: FiniteQuasigroup
    phi: np.ndarray          # phi[m] in N
    gamma: np.ndarray        # gamma[n, m] = γ_n(m)
    name: str = ""

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=np.int64)
        self.gamma = np.asarray(self.gamma, dtype=np.int64)


def validate_crossed_module(X):
    out = []
    M, N = X.M, X.N
    for G, tag in ((M, "M"), (N, "N")):
        for v in qg.validate(G):
            out.append(Violation(v.kind, f"{tag}: {v.message}", v.witness))
        if not qg.is_associative(G):
            out.append(Violation("InvalidInput", f"{tag} is not associative"))
    if out:
        return out
    TM, TN = M.table, N.table
    phi, gam = X.phi, X.gamma
    m = np.arange(M.order)
    n = np.arange(N.order)

    bad = np.argwhere(phi[TM[m[:, None], m[None, :]]] != TN[phi[m[:, None]], phi[m[None, :]]])
    if bad.size:
        a, b = bad[0]
        out.append(Violation("HomomorphismViolation", "φ(mm') != φ(m)φ(m')",
                             (M.elements[a], M.elements[b])))
    for k in n:
        row = gam[k]
        if len(set(row.tolist())) != M.order:
            out.append(Violation("ActionViolation", f"γ_{N.elements[k]} is not bijective", (N.elements[k],)))
            break
        bad = np.argwhere(row[TM] != TM[row[m[:, None]], row[m[None, :]]])
        if bad.size:
            a, b = bad[0]
            out.append(Violation("ActionViolation", f"γ_{N.elements[k]} is not multiplicative",
                                 (N.elements[k], M.elements[a], M.elements[b])))
            break
    # γ_{nn'} = γ_n ∘ γ_{n'} and γ_1 = id
    for a in n:
        for b in n:
            if not np.array_equal(gam[TN[a, b]], gam[a][gam[b]]):
                out.append(Violation("ActionViolation", "γ_{nn'} != γ_n γ_{n'}",
                                     (N.elements[a], N.elements[b])))
                break
        else:
            continue
        break
    if not np.array_equal(gam[N.unit], m):
        out.append(Violation("ActionViolation", "γ_1 is not the identity", (N.elements[N.unit],)))
    # φ(γ_n(m)) = n φ(m) n⁻¹
    lhs = phi[gam]
    rhs = TN[TN[n[:, None], phi[m[None, :]]], N.inv[n][:, None]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = bad[0]
        out.append(Violation("EquivarianceViolation", "φ(γ_n(m)) != nφ(m)n⁻¹",
                             (N.elements[a], M.elements[b])))
    # γ_{φ(m)}(m') = m m' m⁻¹
    lhs = gam[phi[m[:, None]], m[None, :]]
    rhs = TM[TM[m[:, None], m[None, :]], M.inv[m][:, None]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = bad[0]
        out.append(Violation("PeifferViolation", "γ_{φ(m)}(m') != mm'm⁻¹",
                             (M.elements[a], M.elements[b])))
    return out


def conjugation_crossed_module(G):
    """M = N = G, φ = id, γ = conjugation."""
    T = G.table
    g = np.arange(G.order)
    gamma = T[T[g[:, None], g[None, :]], G.inv[g][:, None]]
    return CrossedModule(G, G, g.copy(), gamma, name=f"Inn({G.name})")


def trivial_crossed_module(M, N):
    """φ ≡ 1, γ trivial; needs M abelian for the Peiffer identity."""
    phi = np.full(M.order, N.unit, dtype=np.int64)
    gamma = np.tile(np.arange(M.order), (N.order, 1))
    return CrossedModule(M, N, phi, gamma, name=f"({M.name}->{N.name})")


@dataclass
class CoherentTwoGroupData:
    objects: FiniteQuasigroup
    morphisms: FiniteQuasigroup          # morphism labels and ⊗ table
    src: np.ndarray
    tgt: np.ndarray
    idm: np.ndarray
    comp: np.ndarray                     # comp[x, y] = x∘y or -1
    alpha: np.ndarray                    # alpha[g, h, k] morphism (gh)k -> g(hk)
    pairs: list = field(default_factory=list)   # morphism index -> (first, second) component indices
    kind: str = "coherent"

    @property
    def n_objects(self):
        return self.objects.order

    @property
    def n_morphisms(self):
        return self.morphisms.order

    def counts(self):
        comp_pairs = int(np.count_nonzero(self.comp >= 0))
        return {
            "objects": self.n_objects,
            "morphisms": self.n_morphisms,
            "composable_pairs": comp_pairs,
            "pentagon_quadruples": self.n_objects ** 4,
            "naturality_triples": self.n_morphisms ** 3,
            "interchange_tuples": comp_pairs ** 2,
        }


def _semidirect(first, second, mul, unit, label):
    """Morphism quasigroup on pairs with the given product on index pairs."""
    pairs = [(a, b) for a in range(first.order) for b in range(second.order)]
    idx = {p: i for i, p in enumerate(pairs)}
    labels = [label(first.elements[a], second.elements[b]) for a, b in pairs]
    table = np.array([[idx[mul(p, q)] for q in pairs] for p in pairs], dtype=np.int64)
    return pairs, idx, FiniteQuasigroup(labels, table, idx[unit])


def strict_two_group_from_crossed_module(X):
    bad = validate_crossed_module(X)
    if bad:
        raise PreconditionFailed(f"not a crossed module: {bad[0].message}", bad)
    M, N, phi, gam = X.M, X.N, X.phi, X.gamma
    TM, TN = M.table, N.table

    def mul(p, q):
        (m, n), (m2, n2) = p, q
        return (int(TM[m, gam[n, m2]]), int(TN[n, n2]))
    pairs, idx, H = _semidirect(M, N, mul, (M.unit, N.unit), lambda a, b: f"({a},{b})")
    H.name = f"{M.name}⋉{N.name}"
    src = np.array([n for _, n in pairs], dtype=np.int64)
    tgt = np.array([TN[phi[m], n] for m, n in pairs], dtype=np.int64)
    idm = np.array([idx[(M.unit, n)] for n in range(N.order)], dtype=np.int64)
    comp = np.full((len(pairs), len(pairs)), -1, dtype=np.int64)
    for x, (m2, n2) in enumerate(pairs):
        for y, (m, n) in enumerate(pairs):
            if src[x] == tgt[y]:
                comp[x, y] = idx[(int(TM[m2, m]), n)]
    size = N.order
    alpha = np.empty((size, size, size), dtype=np.int64)
    g = np.arange(size)
    alpha[...] = idm[TN[TN[g[:, None, None], g[None, :, None]], g[None, None, :]]]
    return CoherentTwoGroupData(N, H, src, tgt, idm, comp, alpha, pairs, kind="strict")


def coherent_two_group_from_quasigroup(Q):
    """Morphisms N(G)⋉G: (n,g)⊗(m,h) = (n(gmg⁻¹), gh), s(n,g) = g, t(n,g) = ng."""
    if not qg.is_quasiassociative(Q):
        raise PreconditionFailed("quasigroup is not quasiassociative")
    T, inv = Q.table, Q.inv
    nuc = [int(x) for x in qg.nucleus_indices(Q)]
    Nsub = FiniteQuasigroup([Q.elements[i] for i in nuc],
                            [[nuc.index(int(T[a, b])) for b in nuc] for a in nuc],
                            nuc.index(Q.unit), name=f"N({Q.name})")
    pos = {a: i for i, a in enumerate(nuc)}

    def mul(p, q):
        (n, g), (m, h) = p, q
        conj = int(T[T[g, nuc[m]], inv[g]])
        return (pos[int(T[nuc[n], conj])], int(T[g, h]))
    pairs, idx, H = _semidirect(Nsub, Q, mul, (pos[Q.unit], Q.unit), lambda a, b: f"({a},{b})")
    H.name = f"N⋉{Q.name}"
    src = np.array([g for _, g in pairs], dtype=np.int64)
    tgt = np.array([T[nuc[n], g] for n, g in pairs], dtype=np.int64)
    idm = np.array([idx[(pos[Q.unit], g)] for g in range(Q.order)], dtype=np.int64)
    comp = np.full((len(pairs), len(pairs)), -1, dtype=np.int64)
    for x, (n, mg) in enumerate(pairs):
        for y, (m, g) in enumerate(pairs):
            if src[x] == tgt[y]:
                comp[x, y] = idx[(pos[int(T[nuc[n], nuc[m]])], g)]
    beta = qg.associator_table(Q)
    size = Q.order
    g = np.arange(size)
    gh_k = T[T[g[:, None, None], g[None, :, None]], g[None, None, :]]
    alpha = np.empty((size, size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            for c in range(size):
                alpha[a, b, c] = idx[(pos[int(beta[a, b, c])], int(gh_k[a, b, c]))]
    return CoherentTwoGroupData(Q, H, src, tgt, idm, comp, alpha, pairs)


def _unflatten(idx, base, k):
    out = []
    for _ in range(k):
        idx, r = divmod(idx, base)
        out.append(r)
    return tuple(reversed(out))


def pentagon_witness(T):
    i = kernels.pentagon_first_failure(T.objects.table, T.morphisms.table, T.comp, T.idm, T.alpha)
    if i < 0:
        return None
    return tuple(T.objects.elements[x] for x in _unflatten(i, T.n_objects, 4))


def verify_pentagon(T):
    return pentagon_witness(T) is None


def naturality_witness(T):
    i = kernels.naturality_first_failure(T.morphisms.table, T.comp, T.alpha, T.src, T.tgt)
    if i < 0:
        return None
    return tuple(T.morphisms.elements[x] for x in _unflatten(i, T.n_morphisms, 3))


def verify_naturality(T):
    return naturality_witness(T) is None


def interchange_witness(T):
    i = kernels.interchange_first_failure(T.morphisms.table, T.comp)
    if i < 0:
        return None
    return tuple(T.morphisms.elements[x] for x in _unflatten(i, T.n_morphisms, 4))


def verify_interchange(T):
    return interchange_witness(T) is None


def structure_violations(T):
    """Groupoid laws, functoriality of s, t, id, and the trivial α identities."""
    out = []
    H, G = T.morphisms, T.objects
    TH, TG = H.table, G.table
    src, tgt, idm, comp = T.src, T.tgt, T.idm, T.comp
    m = H.order
    x = np.arange(m)
    for v in qg.validate(H):
        out.append(Violation(v.kind, f"morphisms: {v.message}", v.witness))
    defined = comp >= 0
    if not np.array_equal(defined, src[:, None] == tgt[None, :]):
        out.append(Violation("CompositionViolation", "comp defined off s(x) = t(y)"))
        return out
    # sources and targets of composites
    xs, ys = np.nonzero(defined)
    c = comp[xs, ys]
    if np.any(src[c] != src[ys]) or np.any(tgt[c] != tgt[xs]):
        out.append(Violation("CompositionViolation", "s/t of a composite"))
    # identities
    if np.any(comp[idm[tgt], x] != x) or np.any(comp[x, idm[src]] != x):
        out.append(Violation("CompositionViolation", "identity morphisms are not units"))
    # associativity where defined
    for a, b in zip(xs, ys):
        ab = comp[a, b]
        for cc in np.flatnonzero(defined[b]):
            lhs = comp[ab, cc]
            rhs = comp[a, comp[b, cc]]
            if lhs != rhs:
                out.append(Violation("CompositionViolation", "composition not associative",
                                     (H.elements[a], H.elements[b], H.elements[cc])))
                break
        else:
            continue
        break
    # inverses
    for y in range(m):
        if not any(comp[z, y] == idm[src[y]] and comp[y, z] == idm[tgt[y]] for z in np.flatnonzero(defined[:, y])):
            out.append(Violation("CompositionViolation", "morphism without inverse", (H.elements[y],)))
            break
    # s, t, id preserve ⊗
    if np.any(src[TH] != TG[src[:, None], src[None, :]]):
        out.append(Violation("FunctorViolation", "s does not preserve ⊗"))
    if np.any(tgt[TH] != TG[tgt[:, None], tgt[None, :]]):
        out.append(Violation("FunctorViolation", "t does not preserve ⊗"))
    g = np.arange(G.order)
    if np.any(idm[TG] != TH[idm[g][:, None], idm[g][None, :]]):
        out.append(Violation("FunctorViolation", "id does not preserve ⊗"))
    # α: (gh)k -> g(hk)
    a3 = np.ix_(g, g, g)
    gh_k = TG[TG[a3[0], a3[1]], a3[2]]
    g_hk = TG[a3[0], TG[a3[1], a3[2]]]
    if np.any(src[T.alpha] != gh_k) or np.any(tgt[T.alpha] != g_hk):
        out.append(Violation("AssociatorViolation", "α_{g,h,k} is not a morphism (gh)k -> g(hk)"))
    one = G.unit
    inv = G.inv
    ident = idm[TG[g[:, None], g[None, :]]]
    checks = [
        (T.alpha[one, :, :], ident, "α_{1,g,h} = id_{gh}"),
        (T.alpha[:, one, :], ident, "α_{g,1,h} = id_{gh}"),
        (T.alpha[:, :, one], ident, "α_{g,h,1} = id_{gh}"),
        (T.alpha[g[:, None], inv[g][:, None], g[None, :]], np.broadcast_to(idm[g][None, :], (G.order, G.order)), "α_{g,g⁻¹,h} = id_h"),
        (T.alpha[inv[g][:, None], g[:, None], g[None, :]], np.broadcast_to(idm[g][None, :], (G.order, G.order)), "α_{g⁻¹,g,h} = id_h"),
        (T.alpha[g[None, :], g[:, None], inv[g][:, None]], np.broadcast_to(idm[g][None, :], (G.order, G.order)), "α_{h,g,g⁻¹} = id_h"),
        (T.alpha[g[None, :], inv[g][:, None], g[:, None]], np.broadcast_to(idm[g][None, :], (G.order, G.order)), "α_{h,g⁻¹,g} = id_h"),
    ]
    for got, want, msg in checks:
        if not np.array_equal(got, want):
            out.append(Violation("AssociatorViolation", msg))
    return out


def verification_report(T):
    return {
        "pentagon": verify_pentagon(T),
        "naturality": verify_naturality(T),
        "interchange": verify_interchange(T),
        "structure": [v.to_json() for v in structure_violations(T)],
        "counts": T.counts(),
    }


def crossed_module_from_strict(T):
    """Recover (ker s, objects, t|ker s, γ) from a strict 2-group.

    γ_g(x) = id_g ⊗ x ⊗ id_{g⁻¹}; ker s is the set of morphisms out of 1.
    """
    G, H = T.objects, T.morphisms
    TH = H.table
    ker = [int(x) for x in np.flatnonzero(T.src == G.unit)]
    pos = {x: i for i, x in enumerate(ker)}
    Mk = FiniteQuasigroup([H.elements[x] for x in ker],
                          [[pos[int(TH[a, b])] for b in ker] for a in ker],
                          pos[int(T.idm[G.unit])], name=f"ker s")
    phi = np.array([T.tgt[x] for x in ker], dtype=np.int64)
    gamma = np.array([[pos[int(TH[TH[T.idm[g], x], T.idm[G.inv[g]]])] for x in ker]
                      for g in range(G.order)], dtype=np.int64)
    return CrossedModule(Mk, G, phi, gamma, name=f"recovered({H.name})")


def crossed_modules_isomorphic_via(X, Y, f_M, f_N):
    """True when (f_M, f_N) are bijections intertwining tables, φ and γ."""
    f_M = np.asarray(f_M)
    f_N = np.asarray(f_N)
    if len(set(f_M.tolist())) != X.M.order or len(set(f_N.tolist())) != X.N.order:
        return False
    if X.M.order != Y.M.order or X.N.order != Y.N.order:
        return False
    okM = np.array_equal(f_M[X.M.table], Y.M.table[f_M[:, None], f_M[None, :]])
    okN = np.array_equal(f_N[X.N.table], Y.N.table[f_N[:, None], f_N[None, :]])
    okphi = np.array_equal(f_N[X.phi], Y.phi[f_M])
    okgam = np.array_equal(f_M[X.gamma], Y.gamma[f_N[:, None], f_M[None, :]])
    return bool(okM and okN and okphi and okgam)


def round_trip(X):
    """Crossed module -> strict 2-group -> ker(s) crossed module, compared on tables.

    The comparison map sends m to the morphism (m, 1) and n to the object n.
    """
    T = strict_two_group_from_crossed_module(X)
    Y = crossed_module_from_strict(T)
    idx = {p: i for i, p in enumerate(T.pairs)}
    ker = [int(x) for x in np.flatnonzero(T.src == X.N.unit)]
    pos = {x: i for i, x in enumerate(ker)}
    f_M = [pos[idx[(m, X.N.unit)]] for m in range(X.M.order)]
    f_N = list(range(X.N.order))
    return crossed_modules_isomorphic_via(X, Y, f_M, f_N), Y
