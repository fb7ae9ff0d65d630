"""Enumeration kernels over integer Cayley tables.

Each kernel exists twice: a loop version compiled with numba and a
vectorised numpy version. The backend is picked once at import time; set
``HOPF2_NO_NUMBA=1`` to force numpy (useful for debugging and for the
benchmark). All kernels return the flat index of the first failing tuple in
lexicographic order, or -1.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_disabled = os.environ.get("HOPF2_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not _disabled
BACKEND = "numba" if USE_NUMBA else "numpy"


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def _first(mask):
    idx = np.flatnonzero(mask)
    return int(idx[0]) if idx.size else -1


# -- right division and associator --------------------------------------

def right_division(table):
    """rdiv[d, c] = the unique x with table[x, c] = d."""
    n = table.shape[0]
    rdiv = np.empty_like(table)
    cols = np.broadcast_to(np.arange(n), (n, n))
    rows = np.broadcast_to(np.arange(n)[:, None], (n, n))
    rdiv[table, cols] = rows
    return rdiv


@_njit
def _associator_nb(table, rdiv):
    n = table.shape[0]
    out = np.empty((n, n, n), dtype=table.dtype)
    for g in range(n):
        for h in range(n):
            gh = table[g, h]
            for k in range(n):
                out[g, h, k] = rdiv[table[g, table[h, k]], table[gh, k]]
    return out


def associator_table(table, rdiv):
    """beta[g,h,k] with g(hk) = beta·((gh)k)."""
    if USE_NUMBA:
        return _associator_nb(table, rdiv)
    n = table.shape[0]
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    return rdiv[table[g, table[h, k]], table[table[g, h], k]]


# -- nucleus -------------------------------------------------------------

@_njit
def _nucleus_nb(table):
    n = table.shape[0]
    out = np.ones(n, dtype=np.bool_)
    for a in range(n):
        ok = True
        for g in range(n):
            if not ok:
                break
            for h in range(n):
                if (table[table[a, g], h] != table[a, table[g, h]]
                        or table[g, table[a, h]] != table[table[g, a], h]
                        or table[table[g, h], a] != table[g, table[h, a]]):
                    ok = False
                    break
        out[a] = ok
    return out


def _nucleus_np(table):
    n = table.shape[0]
    a = np.arange(n)[:, None, None]
    g = np.arange(n)[None, :, None]
    h = np.arange(n)[None, None, :]
    left = table[table[a, g], h] == table[a, table[g, h]]
    mid = table[g, table[a, h]] == table[table[g, a], h]
    right = table[table[g, h], a] == table[g, table[h, a]]
    return np.all(left & mid & right, axis=(1, 2))


def nucleus_mask(table):
    return _nucleus_nb(table) if USE_NUMBA else _nucleus_np(table)


# -- 3-cocycle condition for the associator ------------------------------

@_njit
def _cocycle_nb(table, inv, beta):
    n = table.shape[0]
    for g in range(n):
        for h in range(n):
            for k in range(n):
                hk = table[h, k]
                gh = table[g, h]
                for l in range(n):
                    conj = table[table[g, beta[h, k, l]], inv[g]]
                    lhs = table[table[conj, beta[g, hk, l]], beta[g, h, k]]
                    rhs = table[beta[g, h, table[k, l]], beta[gh, k, l]]
                    if lhs != rhs:
                        return ((g * n + h) * n + k) * n + l
    return -1


def _cocycle_np(table, inv, beta):
    n = table.shape[0]
    g = np.arange(n)[:, None, None, None]
    h = np.arange(n)[None, :, None, None]
    k = np.arange(n)[None, None, :, None]
    l = np.arange(n)[None, None, None, :]
    conj = table[table[g, beta[h, k, l]], inv[g]]
    lhs = table[table[conj, beta[g, table[h, k], l]], beta[g, h, k]]
    rhs = table[beta[g, h, table[k, l]], beta[table[g, h], k, l]]
    return _first(lhs != rhs)


def cocycle_first_failure(table, inv, beta):
    """(g β(h,k,l) g⁻¹) β(g,hk,l) β(g,h,k) = β(g,h,kl) β(gh,k,l), left to right."""
    if USE_NUMBA:
        return int(_cocycle_nb(table, inv, beta))
    return _cocycle_np(table, inv, beta)


# -- coherent 2-group checks ----------------------------------------------
# Tables: ``obj`` is the object product, ``mor`` the morphism tensor product,
# ``comp[x, y]`` is x∘y or -1, ``idm[g]`` the identity morphism, ``alpha``
# the associator morphisms indexed by object triples, ``src``/``tgt`` s, t.

@_njit
def _pentagon_nb(obj, mor, comp, idm, alpha):
    n = obj.shape[0]
    for g in range(n):
        for h in range(n):
            gh = obj[g, h]
            for k in range(n):
                hk = obj[h, k]
                a_ghk = alpha[g, h, k]
                for l in range(n):
                    left1 = mor[idm[g], alpha[h, k, l]]
                    left3 = mor[a_ghk, idm[l]]
                    x = comp[alpha[g, hk, l], left3]
                    lhs = -1
                    if x >= 0:
                        lhs = comp[left1, x]
                    rhs = comp[alpha[g, h, obj[k, l]], alpha[gh, k, l]]
                    if lhs < 0 or rhs < 0 or lhs != rhs:
                        return ((g * n + h) * n + k) * n + l
    return -1


def _pentagon_np(obj, mor, comp, idm, alpha):
    n = obj.shape[0]
    g = np.arange(n)[:, None, None, None]
    h = np.arange(n)[None, :, None, None]
    k = np.arange(n)[None, None, :, None]
    l = np.arange(n)[None, None, None, :]
    left1 = mor[idm[g], alpha[h, k, l]]
    left3 = mor[alpha[g, h, k], idm[l]]
    x = comp[alpha[g, obj[h, k], l], left3]
    lhs = np.where(x >= 0, comp[left1, np.maximum(x, 0)], -1)
    rhs = comp[alpha[g, h, obj[k, l]], alpha[obj[g, h], k, l]]
    return _first((lhs < 0) | (rhs < 0) | (lhs != rhs))


def pentagon_first_failure(obj, mor, comp, idm, alpha):
    if USE_NUMBA:
        return int(_pentagon_nb(obj, mor, comp, idm, alpha))
    return _pentagon_np(obj, mor, comp, idm, alpha)


@_njit
def _naturality_nb(mor, comp, alpha, src, tgt):
    m = mor.shape[0]
    for x in range(m):
        for y in range(m):
            xy = mor[x, y]
            for z in range(m):
                lhs = comp[alpha[tgt[x], tgt[y], tgt[z]], mor[xy, z]]
                rhs = comp[mor[x, mor[y, z]], alpha[src[x], src[y], src[z]]]
                if lhs < 0 or rhs < 0 or lhs != rhs:
                    return (x * m + y) * m + z
    return -1


def _naturality_np(mor, comp, alpha, src, tgt):
    m = mor.shape[0]
    x = np.arange(m)[:, None, None]
    y = np.arange(m)[None, :, None]
    z = np.arange(m)[None, None, :]
    lhs = comp[alpha[tgt[x], tgt[y], tgt[z]], mor[mor[x, y], z]]
    rhs = comp[mor[x, mor[y, z]], alpha[src[x], src[y], src[z]]]
    return _first((lhs < 0) | (rhs < 0) | (lhs != rhs))


def naturality_first_failure(mor, comp, alpha, src, tgt):
    if USE_NUMBA:
        return int(_naturality_nb(mor, comp, alpha, src, tgt))
    return _naturality_np(mor, comp, alpha, src, tgt)


@_njit
def _interchange_nb(mor, comp):
    m = mor.shape[0]
    for a in range(m):
        for b in range(m):
            ab = comp[a, b]
            if ab < 0:
                continue
            for c in range(m):
                for d in range(m):
                    cd = comp[c, d]
                    if cd < 0:
                        continue
                    rhs = comp[mor[a, c], mor[b, d]]
                    if rhs < 0 or mor[ab, cd] != rhs:
                        return ((a * m + b) * m + c) * m + d
    return -1


def _interchange_np(mor, comp):
    m = mor.shape[0]
    pairs = np.argwhere(comp >= 0)
    a, b = pairs[:, 0][:, None], pairs[:, 1][:, None]
    c, d = pairs[:, 0][None, :], pairs[:, 1][None, :]
    lhs = mor[comp[a, b], comp[c, d]]
    rhs = comp[mor[a, c], mor[b, d]]
    bad = (rhs < 0) | (lhs != rhs)
    idx = np.flatnonzero(bad)
    if not idx.size:
        return -1
    # report in the same flat (a, b, c, d) numbering as the loop version
    p, q = divmod(int(idx[0]), len(pairs))
    (a0, b0), (c0, d0) = pairs[p], pairs[q]
    return ((int(a0) * m + int(b0)) * m + int(c0)) * m + int(d0)


def interchange_first_failure(mor, comp):
    """(a∘b)⊗(c∘d) = (a⊗c)∘(b⊗d) whenever the left side is defined."""
    if USE_NUMBA:
        return int(_interchange_nb(mor, comp))
    return _interchange_np(mor, comp)
