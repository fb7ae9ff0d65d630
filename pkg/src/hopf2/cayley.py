"""Sign cochains on Z_2^n from Cayley–Dickson doubling, and the Cayley basis.

Doubling convention: (a, b)(c, d) = (ac − d̄b, da + bc̄), starting from the
integers. Basis index ``a`` is an n-bit integer; the most recent doubling
unit is the top bit, and labels print the bits most-significant first, so
for n = 2 the label ``01`` is i and ``10`` is j.
"""

from dataclasses import dataclass

import numpy as np

from . import quasigroup as qg
from . import limits
from .errors import InvalidCochain, InvalidInput

MAX_CD_N = 4


def bits(a, n):
    return format(a, f"0{n}b") if n else "0"


def parse_bits(s):
    return int(s, 2)


def _conj(x):
    return [x[0]] + [-t for t in x[1:]]


def cd_multiply(x, y):
    """Product of two coefficient lists of length 2^n."""
    if len(x) == 1:
        return [x[0] * y[0]]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    ac = cd_multiply(a, c)
    db = cd_multiply(_conj(d), b)
    da = cd_multiply(d, a)
    bc = cd_multiply(b, _conj(c))
    return [p - q for p, q in zip(ac, db)] + [p + q for p, q in zip(da, bc)]


@dataclass(frozen=True, eq=False)
class Cochain2:
    """F: Z_2^n × Z_2^n → {±1} as a (2^n, 2^n) integer array."""

    n: int
    F: np.ndarray

    def __post_init__(self):
        size = 1 << self.n
        F = np.asarray(self.F, dtype=np.int64)
        object.__setattr__(self, "F", F)
        if F.shape != (size, size):
            raise InvalidCochain(f"F must be {size}x{size}")
        if not np.all(np.abs(F) == 1):
            raise InvalidCochain("F must take values in {+1, -1}")

    @property
    def size(self):
        return 1 << self.n

    def __call__(self, a, b):
        return int(self.F[a, b])

    def is_normalized(self):
        return bool(np.all(self.F[0, :] == 1) and np.all(self.F[:, 0] == 1))

    def __eq__(self, other):
        return isinstance(other, Cochain2) and self.n == other.n and np.array_equal(self.F, other.F)

    def to_json(self):
        return {"n": self.n, "F": self.F.tolist()}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(int(data["n"]), np.array(data["F"], dtype=np.int64))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidCochain(f"malformed cochain: {exc}") from exc


def cayley_dickson_cochain(n):
    """Read F off the basis products of the 2^n-dimensional doubled algebra."""
    if n < 0:
        raise InvalidInput("n must be non-negative")
    limits.require("Cayley–Dickson cochain", n, MAX_CD_N, 1 << (n + 1))
    size = 1 << n
    F = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        ea = [0] * size
        ea[a] = 1
        for b in range(size):
            eb = [0] * size
            eb[b] = 1
            prod = cd_multiply(ea, eb)
            support = [i for i, v in enumerate(prod) if v]
            if support != [a ^ b] or abs(prod[a ^ b]) != 1:
                raise InvalidCochain(f"basis product e_{a} e_{b} is not a signed basis element")
            F[a, b] = prod[a ^ b]
    return Cochain2(n, F)


def trivial_cochain(n):
    size = 1 << n
    return Cochain2(n, np.ones((size, size), dtype=np.int64))


def gn_label(a, i, n):
    return f"e[a={bits(a, n)},i={i}]"


def build_Gn(F):
    """Quasigroup {e_a^i}: e_a^i e_b^j = e_{a+b}^{i+j+[F(a,b) = -1]}."""
    if not F.is_normalized():
        raise InvalidCochain("F is not normalized: F(0,b) = F(a,0) = 1 is required")
    size = F.size
    flip = (F.F == -1).astype(np.int64)
    a = np.arange(size)
    elements = [gn_label(x, i, F.n) for x in range(size) for i in (0, 1)]
    table = np.empty((2 * size, 2 * size), dtype=np.int64)
    for i in (0, 1):
        for j in (0, 1):
            table[2 * a[:, None] + i, 2 * a[None, :] + j] = (
                2 * (a[:, None] ^ a[None, :]) + (i + j + flip) % 2)
    Q = qg.FiniteQuasigroup(elements, table, 0, name=f"G_{F.n}")
    bad = qg.validate(Q)
    if bad:
        raise InvalidCochain(f"cochain does not give a quasigroup: {bad[0].message}", bad)
    return Q


def gn_index(a, i):
    return 2 * a + i


@dataclass(frozen=True, eq=False)
class Cocycle3:
    """ψ: (Z_2^n)^3 → {±1} as a (2^n, 2^n, 2^n) integer array."""

    n: int
    psi: np.ndarray

    def __call__(self, b, c, d):
        return int(self.psi[b, c, d])

    def identity_witness(self):
        """First (b,c,d,e) violating ψ(c,d,e)ψ(b,c+d,e)ψ(b,c,d) = ψ(b+c,d,e)ψ(b,c,d+e)."""
        size = 1 << self.n
        b, c, d, e = np.ix_(*(np.arange(size),) * 4)
        p = self.psi
        lhs = p[c, d, e] * p[b, c ^ d, e] * p[b, c, d]
        rhs = p[b ^ c, d, e] * p[b, c, d ^ e]
        bad = np.argwhere(lhs != rhs)
        return tuple(int(x) for x in bad[0]) if bad.size else None

    def is_cocycle(self):
        return self.identity_witness() is None

    def is_trivial(self):
        return bool(np.all(self.psi == 1))


def _grid(size):
    return np.ix_(*(np.arange(size),) * 3)


def coboundary_3cocycle(F):
    """ψ(b,c,d) = F(b,c+d) F(c,d) F(b+c,d) F(b,c), the group coboundary of F.

    Values are ±1, so quotients are products.
    """
    if not F.is_normalized():
        raise InvalidCochain("F is not normalized")
    b, c, d = _grid(F.size)
    G = F.F
    return Cocycle3(F.n, G[b, c ^ d] * G[c, d] * G[b ^ c, d] * G[b, c])


def swapped_coboundary(F):
    """F(b,c+d) F(c,d) F(d,c+b) F(c,b): the variant with transposed arguments
    in the last two factors. Kept for the consistency identity below; it is not
    a 3-cocycle once F is non-symmetric."""
    b, c, d = _grid(F.size)
    G = F.F
    return Cocycle3(F.n, G[b, c ^ d] * G[c, d] * G[d, c ^ b] * G[c, b])


def associator_sign_from_squares(F):
    """F(s,s) ψ'(b,c,d) F(b,b) F(c,c) F(d,d) with s = b+c+d and ψ' the swapped variant.

    For Cayley–Dickson cochains this equals the coboundary ψ, because distinct
    imaginary units anticommute: F(x,y)F(y,x) = F(x,x)F(y,y)F(x+y,x+y).
    """
    b, c, d = _grid(F.size)
    G = F.F
    sq = np.diagonal(G)
    s = b ^ c ^ d
    return Cocycle3(F.n, sq[s] * swapped_coboundary(F).psi * sq[b] * sq[c] * sq[d])


def psi_associator_witness(F):
    """First (a,b,c) where β(e_a,e_b,e_c) differs from e_0^{(1-ψ)/2}, else None."""
    Q = build_Gn(F)
    beta = qg.associator_table(Q)
    psi = coboundary_3cocycle(F).psi
    size = F.size
    idx = 2 * np.arange(size)
    got = beta[np.ix_(idx, idx, idx)]
    want = np.where(psi == 1, gn_index(0, 0), gn_index(0, 1))
    bad = np.argwhere(got != want)
    return tuple(int(x) for x in bad[0]) if bad.size else None


def psi_matches_quasigroup_associator(F):
    return psi_associator_witness(F) is None
