"""Finite quasigroups given by Cayley tables."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import kernels
from .errors import InvalidInput, PreconditionFailed, SizeLimit


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()

    def to_json(self):
        return {"kind": self.kind, "message": self.message, "witness": list(self.witness)}


class FiniteQuasigroup:
    """Cayley table on indices 0..n-1 plus labels, unit and inverse table.

    Nothing is validated on construction beyond shapes and index ranges;
    call :func:`validate` for the quasigroup axioms.
    """

    def __init__(self, elements, table, unit, inv=None, name=None):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InvalidInput("duplicate element labels")
        n = len(self.elements)
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (n, n):
            raise InvalidInput(f"table must be {n}x{n}, got {table.shape}")
        if n and (table.min() < 0 or table.max() >= n):
            raise InvalidInput("table entries out of range")
        if not 0 <= unit < n:
            raise InvalidInput("unit out of range")
        self.table = table
        self.unit = int(unit)
        if inv is None:
            inv = _left_inverses(table, self.unit)
        inv = np.asarray(inv, dtype=np.int64)
        if inv.shape != (n,) or (n and (inv.min() < 0 or inv.max() >= n)):
            raise InvalidInput("inverse table has the wrong shape or range")
        self.inv = inv
        self.name = name
        self._cache = {}

    @classmethod
    def from_labels(cls, elements, table, unit, inv=None, name=None):
        idx = {e: i for i, e in enumerate(elements)}
        try:
            t = [[idx[x] for x in row] for row in table]
            u = idx[unit]
            iv = None if inv is None else [idx[x] for x in inv]
        except KeyError as exc:
            raise InvalidInput(f"unknown element {exc}") from exc
        return cls(elements, t, u, iv, name=name)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def mul(self, g, h):
        """Product of two labels."""
        return self.elements[self.table[self.index[g], self.index[h]]]

    def inverse(self, g):
        return self.elements[self.inv[self.index[g]]]

    @property
    def rdiv(self):
        if "rdiv" not in self._cache:
            self._cache["rdiv"] = kernels.right_division(self.table)
        return self._cache["rdiv"]

    def to_json(self):
        e = self.elements
        return {
            "elements": list(e),
            "unit": e[self.unit],
            "table": [[e[x] for x in row] for row in self.table.tolist()],
            "inv": [e[x] for x in self.inv.tolist()],
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls.from_labels(data["elements"], data["table"], data["unit"], data.get("inv"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed quasigroup: {exc}") from exc

    def __repr__(self):
        return f"FiniteQuasigroup({self.name or '?'}, order={self.order})"


def _left_inverses(table, unit):
    n = table.shape[0]
    inv = np.zeros(n, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(table[:, g] == unit)
        inv[g] = hits[0] if hits.size else 0
    return inv


def cyclic_group(n, prefix="c"):
    els = [f"{prefix}{i}" for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteQuasigroup(els, table, 0, name=f"Z_{n}")


def group_from_function(elements, mul, unit, name=None):
    """Build a table by calling ``mul`` on labels."""
    idx = {e: i for i, e in enumerate(elements)}
    table = [[idx[mul(a, b)] for b in elements] for a in elements]
    return FiniteQuasigroup(elements, table, idx[unit], name=name)


# -- validation ---------------------------------------------------------

def validate(Q):
    out = []
    T = Q.table
    n = Q.order
    e = Q.elements
    for g in range(n):
        if len(set(T[g].tolist())) != n:
            h = _first_repeat(T[g].tolist())
            out.append(Violation("LatinSquareViolation", f"row {e[g]} repeats {e[h]}", (e[g], e[h])))
            break
    for h in range(n):
        if len(set(T[:, h].tolist())) != n:
            g = _first_repeat(T[:, h].tolist())
            out.append(Violation("LatinSquareViolation", f"column {e[h]} repeats {e[g]}", (e[h], e[g])))
            break
    u = Q.unit
    for g in range(n):
        if T[u, g] != g or T[g, u] != g:
            out.append(Violation("UnitViolation", f"1·{e[g]} or {e[g]}·1 differs from {e[g]}", (e[g],)))
            break
    inv = Q.inv
    gi = np.arange(n)[:, None]
    hi = np.arange(n)[None, :]
    left = T[inv[gi], T[gi, hi]] == hi
    right = T[T[hi, inv[gi]], gi] == hi
    bad = np.argwhere(~left)
    if bad.size:
        g, h = bad[0]
        out.append(Violation("InverseViolation", "g⁻¹(gh) != h", (e[g], e[h])))
    bad = np.argwhere(~right)
    if bad.size:
        g, h = bad[0]
        out.append(Violation("InverseViolation", "(hg⁻¹)g != h", (e[g], e[h])))
    return out


def _first_repeat(seq):
    seen = set()
    for x in seq:
        if x in seen:
            return x
        seen.add(x)
    return seq[0]


def is_valid(Q):
    return not validate(Q)


def is_associative(Q):
    T = Q.table
    n = T.shape[0]
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    return bool(np.all(T[T[g, h], k] == T[g, T[h, k]]))


# -- nucleus and associator ---------------------------------------------

def nucleus_indices(Q):
    if "nucleus" not in Q._cache:
        Q._cache["nucleus"] = np.flatnonzero(kernels.nucleus_mask(Q.table))
    return Q._cache["nucleus"]


def nucleus(Q):
    return {Q.elements[i] for i in nucleus_indices(Q)}


@dataclass
class AssociatorReport:
    beta: np.ndarray
    image: frozenset
    in_nucleus: bool

    def __call__(self, g, h, k):
        return self.beta[g, h, k]


def associator_table(Q):
    if "beta" not in Q._cache:
        Q._cache["beta"] = kernels.associator_table(Q.table, Q.rdiv)
    return Q._cache["beta"]


def associator(Q):
    beta = associator_table(Q)
    img = np.unique(beta)
    nuc = set(nucleus_indices(Q).tolist())
    return AssociatorReport(
        beta=beta,
        image=frozenset(Q.elements[i] for i in img),
        in_nucleus=all(int(i) in nuc for i in img),
    )


def quasiassociativity_report(Q):
    """Image of β inside N(G), conjugation stability, bracketing agreement."""
    T, inv = Q.table, Q.inv
    nuc = nucleus_indices(Q)
    nuc_set = set(nuc.tolist())
    rep = associator(Q)
    u = np.arange(Q.order)[:, None]
    a = nuc[None, :]
    left = T[T[u, a], inv[u]]
    right = T[u, T[a, inv[u]]]
    mismatch = np.argwhere(left != right)
    stable = all(int(x) in nuc_set for x in np.unique(left))
    out = {
        "image_in_nucleus": rep.in_nucleus,
        "conjugation_stable": stable,
        "bracketing_agrees": not mismatch.size,
        "bracketing_witness": None,
    }
    if mismatch.size:
        i, j = mismatch[0]
        out["bracketing_witness"] = (Q.elements[i], Q.elements[nuc[j]])
    return out


def is_quasiassociative(Q):
    r = quasiassociativity_report(Q)
    return r["image_in_nucleus"] and r["conjugation_stable"] and r["bracketing_agrees"]


def cocycle_witness(Q):
    """First (g,h,k,l) violating the associator 3-cocycle condition, else None."""
    if not is_quasiassociative(Q):
        raise PreconditionFailed("quasigroup is not quasiassociative")
    n = Q.order
    idx = kernels.cocycle_first_failure(Q.table, Q.inv, associator_table(Q))
    if idx < 0:
        return None
    g, rest = divmod(idx, n ** 3)
    h, rest = divmod(rest, n ** 2)
    k, l = divmod(rest, n)
    return tuple(Q.elements[i] for i in (g, h, k, l))


def cocycle_check(Q):
    return cocycle_witness(Q) is None


# -- product trees -------------------------------------------------------

MAX_TREE_N = 5


@lru_cache(maxsize=None)
def _trees(leaves):
    if leaves == 1:
        return ("x",)
    out = []
    for k in range(1, leaves):
        for left in _trees(k):
            for right in _trees(leaves - k):
                out.append((left, right))
    return tuple(out)


def product_trees(n):
    """All parenthesisations of an (n+1)-fold product, as nested pairs.

    A leaf is the string ``"x"``; leaves are filled left to right.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if n > MAX_TREE_N:
        raise SizeLimit(f"product_trees is limited to n <= {MAX_TREE_N}")
    return list(_trees(n + 1))


def tree_leaves(tree):
    return 1 if tree == "x" else tree_leaves(tree[0]) + tree_leaves(tree[1])


def tree_str(tree):
    if tree == "x":
        return "x"
    return f"({tree_str(tree[0])}{tree_str(tree[1])})"


def eval_tree(table, tree, args):
    """Evaluate ``tree`` with numpy index arrays as leaves (broadcasting)."""
    it = iter(args)

    def go(t):
        if t == "x":
            return next(it)
        a = go(t[0])
        b = go(t[1])
        return table[a, b]
    return go(tree)


def nucleus_passthrough_check(Q, n):
    """Trees agreeing with 1 at a slot also agree with any nucleus element there."""
    return nucleus_passthrough_witness(Q, n) is None


def nucleus_passthrough_witness(Q, n):
    if n > 3:
        raise SizeLimit("nucleus_passthrough_check is limited to n <= 3")
    trees = product_trees(n)
    size = Q.order
    nuc = nucleus_indices(Q)
    T = Q.table
    for slot in range(n + 1):
        # other n arguments range over Q, inserted element over {1} or N(G)
        shape_free = [size] * n
        grids = np.indices(shape_free).reshape(n, -1)

        def args_with(x):
            cols = []
            j = 0
            for pos in range(n + 1):
                if pos == slot:
                    cols.append(x)
                else:
                    cols.append(grids[j][None, :])
                    j += 1
            return cols
        with_unit = [eval_tree(T, t, args_with(np.array([[Q.unit]]))) for t in trees]
        with_nuc = [eval_tree(T, t, args_with(nuc[:, None])) for t in trees]
        for i, j in product(range(len(trees)), repeat=2):
            if i >= j:
                continue
            if np.array_equal(with_unit[i], with_unit[j]):
                if not np.array_equal(with_nuc[i], with_nuc[j]):
                    return (tree_str(trees[i]), tree_str(trees[j]), slot)
    return None
