"""Exact sparse linear algebra over labelled bases.

Vectors are plain dicts ``label -> scalar``. A scalar is an ``int`` or a
``Fraction``; integral values are always stored as ``int`` so the common
{0, +1, -1} structure constants stay cheap.

Tensor-product spaces are never materialised: a :class:`TensorSpace` knows
its factors and computes indices by mixed radix, so a map out of ``H^{⊗4}``
only ever touches the columns it is asked for.
"""

import heapq
import math
from fractions import Fraction
from itertools import product

from .errors import DomainMismatch, InvalidInput


# -- scalars -------------------------------------------------------------

def scalar(x):
    """Normalise ``x`` to an exact scalar (int when integral)."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return scalar(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- spaces --------------------------------------------------------------

class Space:
    """Finite-dimensional space with an ordered basis of hashable labels."""

    factors = None

    def __init__(self, labels, name=None):
        labels = tuple(labels)
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise InvalidInput(f"duplicate basis label {lab!r}")
            index[lab] = i
        self._labels = labels
        self._index = index
        self._hash = None
        self.name = name

    @property
    def labels(self):
        return self._labels

    @property
    def dim(self):
        return len(self._labels)

    def index(self, label):
        return self._index[label]

    def __contains__(self, label):
        try:
            return label in self._index
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Space) or isinstance(other, TensorSpace):
            return False
        return self._labels == other._labels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._labels)
        return self._hash

    def __repr__(self):
        return f"Space({self.name or '?'}, dim={self.dim})"


class TensorSpace(Space):
    """Tensor product of atomic spaces; labels are tuples, one entry per factor."""

    def __init__(self, factors, name=None):
        self.factors = tuple(factors)
        self.name = name
        self._labels = None
        self._hash = None
        self._dim = math.prod(f.dim for f in self.factors)

    @property
    def labels(self):
        if self._labels is None:
            self._labels = tuple(product(*(f.labels for f in self.factors)))
        return self._labels

    @property
    def dim(self):
        return self._dim

    def index(self, label):
        i = 0
        for f, lab in zip(self.factors, label):
            i = i * f.dim + f.index(lab)
        return i

    def __contains__(self, label):
        return (isinstance(label, tuple) and len(label) == len(self.factors)
                and all(lab in f for f, lab in zip(self.factors, label)))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, TensorSpace) and self.factors == other.factors

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("tensor",) + self.factors)
        return self._hash

    def __repr__(self):
        return "(" + " ⊗ ".join(f.name or "?" for f in self.factors) + ")"


#: the ground field, a tensor product with no factors; its one label is ()
K = TensorSpace((), name="k")


def arity(space):
    return len(space.factors) if isinstance(space, TensorSpace) else 1


def tensor_space(*spaces):
    facs = []
    for s in spaces:
        facs.extend(s.factors if isinstance(s, TensorSpace) else (s,))
    if len(facs) == 1:
        return facs[0]
    return TensorSpace(facs)


def as_tuple(label, n):
    return (label,) if n == 1 else label


def from_tuple(t, n):
    return t[0] if n == 1 else t


# -- sparse vectors ------------------------------------------------------

def vadd(acc, v, c=1):
    """acc += c*v in place; drops zeros."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            del acc[k]
    return acc


def vnorm(v):
    return {k: scalar(x) for k, x in v.items() if x}


def vsub(u, v):
    return vadd(dict(u), v, -1)


def vscale(v, c):
    return {k: c * x for k, x in v.items()} if c else {}


def vtensor(parts):
    """Tensor product of vectors given as ``[(vector, arity), ...]``.

    Keys of the result are flat tuples (unwrapped if the total arity is 1).
    """
    acc = {(): 1}
    total = 0
    for v, n in parts:
        total += n
        nxt = {}
        for k, c in acc.items():
            for lab, d in v.items():
                nxt[k + as_tuple(lab, n)] = c * d
        acc = nxt
        if not acc:
            return {}
    if total == 1:
        return {k[0]: c for k, c in acc.items()}
    return acc


def basis_vector(label):
    return {label: 1}


# -- linear maps ---------------------------------------------------------

def _zero_column(_x):
    return {}


class LinearMap:
    """Sparse linear map; columns are computed lazily and cached."""

    def __init__(self, domain, codomain, columns=None, fn=None, name=None):
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self._cols = {}
        if columns:
            for x, col in columns.items():
                col = vnorm(col)
                if col:
                    self._cols[x] = col
        self._fn = fn
        self._complete = fn is None
        self._diag = None

    @classmethod
    def from_entries(cls, domain, codomain, entries, name=None):
        cols = {}
        for row, col, val in entries:
            if col not in domain:
                raise InvalidInput(f"unknown domain label {col!r}")
            if row not in codomain:
                raise InvalidInput(f"unknown codomain label {row!r}")
            c = cols.setdefault(col, {})
            c[row] = c.get(row, 0) + scalar(val)
        return cls(domain, codomain, cols, name=name)

    @classmethod
    def from_function(cls, domain, codomain, fn, name=None):
        return cls(domain, codomain, fn=fn, name=name)

    def col(self, x):
        c = self._cols.get(x)
        if c is not None:
            return c
        if self._fn is None:
            return {}
        c = vnorm(self._fn(x))
        self._cols[x] = c
        return c

    def apply(self, v):
        acc = {}
        for x, c in v.items():
            vadd(acc, self.col(x), c)
        return acc

    __call__ = apply

    def materialize(self):
        if not self._complete:
            for x in self.domain.labels:
                self.col(x)
            self._complete = True
            self._fn = None
        return self

    @property
    def entries(self):
        self.materialize()
        return {(r, x): c for x, col in self._cols.items() for r, c in col.items()}

    def sorted_entries(self):
        self.materialize()
        out = []
        for x in self.domain.labels:
            col = self._cols.get(x)
            if col:
                for r in sorted(col, key=self.codomain.index):
                    out.append((r, x, col[r]))
        out.sort(key=lambda e: (self.codomain.index(e[0]), self.domain.index(e[1])))
        return out

    @property
    def nnz(self):
        self.materialize()
        return sum(len(c) for c in self._cols.values())

    def first_difference(self, other):
        """First domain label (in basis order) where the maps differ, else None."""
        _check_parallel(self, other)
        for x in self.domain.labels:
            if self.col(x) != other.col(x):
                return x
        return None

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.domain != other.domain or self.codomain != other.codomain:
            return False
        return self.first_difference(other) is None

    __hash__ = None

    def is_zero(self):
        return all(not self.col(x) for x in self.domain.labels)

    def __add__(self, other):
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self):
        return linear_combination([(-1, self)])

    def __rmul__(self, c):
        return linear_combination([(scalar(c), self)])

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return f"LinearMap({self.name or '?'}: {self.domain!r} -> {self.codomain!r})"

    # wire format
    def to_json(self):
        return {
            "domain": [label_to_json(x) for x in self.domain.labels],
            "codomain": [label_to_json(x) for x in self.codomain.labels],
            "entries": [[label_to_json(r), label_to_json(x), scalar_str(c)]
                        for r, x, c in self.sorted_entries()],
        }

    @classmethod
    def from_json(cls, data, domain=None, codomain=None, name=None):
        try:
            dom_labels = [label_from_json(x) for x in data["domain"]]
            cod_labels = [label_from_json(x) for x in data["codomain"]]
            raw = data["entries"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed linear map: {exc}") from exc
        if domain is None:
            domain = Space(dom_labels)
        elif list(domain.labels) != dom_labels:
            raise InvalidInput("domain labels do not match the expected space")
        if codomain is None:
            codomain = Space(cod_labels)
        elif list(codomain.labels) != cod_labels:
            raise InvalidInput("codomain labels do not match the expected space")
        try:
            entries = [(label_from_json(r), label_from_json(x), Fraction(v)) for r, x, v in raw]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad entry: {exc}") from exc
        return cls.from_entries(domain, codomain, entries, name=name)


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def label_from_json(obj):
    if isinstance(obj, list):
        return tuple(label_from_json(x) for x in obj)
    return obj


def _check_parallel(f, g):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch(f"maps are not parallel: {f!r} vs {g!r}")


def identity(space):
    return LinearMap(space, space, fn=basis_vector, name="id")


def zero_map(domain, codomain):
    return LinearMap(domain, codomain, fn=_zero_column, name="0")


def linear_combination(terms):
    terms = [(scalar(c), f) for c, f in terms]
    f0 = terms[0][1]
    for _, f in terms[1:]:
        _check_parallel(f0, f)

    def fn(x):
        acc = {}
        for c, f in terms:
            vadd(acc, f.col(x), c)
        return acc
    return LinearMap(f0.domain, f0.codomain, fn=fn)


def compose(*maps):
    """compose(f, g, h) = f∘g∘h."""
    if len(maps) == 1:
        return maps[0]
    if len(maps) > 2:
        return compose(maps[0], compose(*maps[1:]))
    f, g = maps
    if g.codomain != f.domain:
        raise DomainMismatch(f"cannot compose {f!r} after {g!r}")
    return LinearMap(g.domain, f.codomain, fn=lambda x: f.apply(g.col(x)))


def tensor_map(*maps):
    if len(maps) == 1:
        return maps[0]
    dom = tensor_space(*(m.domain for m in maps))
    cod = tensor_space(*(m.codomain for m in maps))
    dar = [arity(m.domain) for m in maps]
    car = [arity(m.codomain) for m in maps]
    n_dom = arity(dom)

    def fn(x):
        xt = as_tuple(x, n_dom)
        parts = []
        pos = 0
        for m, a, b in zip(maps, dar, car):
            parts.append((m.col(from_tuple(xt[pos:pos + a], a)), b))
            pos += a
        return vtensor(parts)
    return LinearMap(dom, cod, fn=fn)


def permutation_map(factors, perm):
    """V_0⊗...⊗V_{k-1} -> V_{perm[0]}⊗...; e.g. perm (1, 0) is the flip."""
    dom = tensor_space(*factors)
    cod = tensor_space(*(factors[p] for p in perm))
    return LinearMap(dom, cod, fn=lambda x: {tuple(x[p] for p in perm): 1})


def functional(space, values):
    """Linear form space -> k from a dict label -> scalar."""
    return LinearMap(space, K, {x: {(): v} for x, v in values.items()})


def from_vector_map(domain, codomain, fn):
    return LinearMap(domain, codomain, fn=fn)


def vector_as_map(space, v):
    """k -> space sending 1 to v."""
    return LinearMap(K, space, {(): v})


# -- products in tensor powers of algebras -----------------------------

def is_diagonal(mult):
    """True when ``mult`` is a product with orthogonal idempotent basis."""
    if mult._diag is None:
        space = mult.codomain
        diag = True
        for x in space.labels:
            for y in space.labels:
                want = {x: 1} if x == y else {}
                if mult.col((x, y)) != want:
                    diag = False
                    break
            if not diag:
                break
        mult._diag = diag
    return mult._diag


def leg_product(mults, u, v):
    """Legwise product of u, v in A_1⊗...⊗A_k; ``mults[i]`` multiplies leg i."""
    k = len(mults)
    if all(is_diagonal(m) for m in mults):
        if len(u) > len(v):
            u, v = v, u
        out = {}
        for key, c in u.items():
            d = v.get(key)
            if d is not None:
                out[key] = c * d
        return out
    acc = {}
    for a, c in u.items():
        at = as_tuple(a, k)
        for b, d in v.items():
            bt = as_tuple(b, k)
            parts = [(mults[i].col((at[i], bt[i])), 1) for i in range(k)]
            vadd(acc, vtensor(parts), c * d)
    return acc


def product_of_images(f, mults):
    """x⊗y -> f(x)·f(y), legwise in the codomain of f (domain f.domain⊗f.domain)."""
    dom = tensor_space(f.domain, f.domain)
    n = arity(f.domain)

    def fn(xy):
        xt = as_tuple(xy, 2 * n)
        x, y = from_tuple(xt[:n], n), from_tuple(xt[n:], n)
        return leg_product(mults, f.col(x), f.col(y))
    return LinearMap(dom, f.codomain, fn=fn)


def convolve(f, g, coproduct, mults):
    """(f*g)(x) = f(x_1) g(x_2), legwise product in the common codomain."""
    _check_parallel(f, g)
    if coproduct.codomain != tensor_space(f.domain, f.domain):
        raise DomainMismatch("coproduct does not match the convolved maps")

    def fn(x):
        acc = {}
        for (x1, x2), c in coproduct.col(x).items():
            vadd(acc, leg_product(mults, f.col(x1), g.col(x2)), c)
        return acc
    return LinearMap(f.domain, f.codomain, fn=fn)


# -- echelon forms, quotients, kernels -----------------------------------

class _Echelon:
    """Incremental Gaussian elimination with the smallest index as pivot."""

    def __init__(self, space, track=False):
        self.space = space
        self.rows = {}
        self.tags = {} if track else None
        self._order = space.index

    def reduce(self, v, tag=None):
        v = {k: x for k, x in v.items() if x}
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        order = self._order
        heap = [(order(k), k) for k in v if k in rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, k = heapq.heappop(heap)
            if k in seen:
                continue
            c = v.get(k)
            if not c:
                continue
            seen.add(k)
            row = rows[k]
            for lab, x in row.items():
                y = v.get(lab, 0) - c * x
                if y:
                    v[lab] = y
                    if lab in rows and lab not in seen:
                        heapq.heappush(heap, (order(lab), lab))
                else:
                    v.pop(lab, None)
            if tag is not None:
                vadd(tag, self.tags[k], -c)
        return v, tag

    def add(self, v, tag=None):
        """Insert v; returns (True, None) if independent, else (False, reduced tag)."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False, tag
        piv = min(v, key=self._order)
        c = v[piv]
        inv = Fraction(1) / Fraction(c) if c != 1 else 1
        self.rows[piv] = {k: scalar(x * inv) for k, x in v.items()}
        if tag is not None:
            self.tags[piv] = {k: scalar(x * inv) for k, x in tag.items()}
        return True, None


class QuotientSpace:
    """ambient / span(relations), with a canonical normal-form projection."""

    def __init__(self, ambient, generators=()):
        self.ambient = ambient
        self._ech = _Echelon(ambient)
        self._rref = None
        for g in generators:
            self.add_relation(g)

    def add_relation(self, v):
        for k in v:
            if k not in self.ambient:
                raise DomainMismatch(f"label {k!r} is not in the ambient space")
        added, _ = self._ech.add(v)
        if added:
            self._rref = None
        return added

    def project(self, v):
        """Normal form of v: every pivot coordinate eliminated."""
        return vnorm(self._ech.reduce(v)[0])

    def is_zero(self, v):
        return not self.project(v)

    __contains__ = is_zero

    @property
    def rank(self):
        return len(self._ech.rows)

    @property
    def dim(self):
        return self.ambient.dim - self.rank

    @property
    def pivots(self):
        return sorted(self._ech.rows, key=self.ambient.index)

    @property
    def relations(self):
        """Reduced row-echelon basis of the relation subspace."""
        if self._rref is None:
            out = []
            for p in self.pivots:
                row = self._ech.rows[p]
                rest = {k: x for k, x in row.items() if k != p}
                red = self._ech.reduce(rest)[0]
                red[p] = 1
                out.append(vnorm(red))
            self._rref = out
        return self._rref

    def basis(self):
        return list(self.relations)


def quotient(ambient, generators):
    return QuotientSpace(ambient, generators)


def span(space, vectors):
    """Echelon basis of a subspace, as a QuotientSpace (membership = project to 0)."""
    return QuotientSpace(space, vectors)


def rank(vectors, space):
    return QuotientSpace(space, vectors).rank


def kernel(f):
    """Basis of ker f, in reduced form (each vector has a distinct leading label)."""
    ech = _Echelon(f.codomain, track=True)
    found = []
    for x in f.domain.labels:
        added, tag = ech.add(f.col(x), {x: 1})
        if not added:
            found.append(vnorm(tag))
    # canonical basis of the kernel itself
    kspace = span(f.domain, found)
    return kspace.relations


def image_rank(f):
    return rank((f.col(x) for x in f.domain.labels), f.codomain)


def maps_diff_mod(f, g, q):
    """First domain label where f - g does not vanish in q, else None."""
    _check_parallel(f, g)
    if f.codomain != q.ambient:
        raise DomainMismatch("codomain is not the ambient space of the quotient")
    for x in f.domain.labels:
        a, b = f.col(x), g.col(x)
        if a != b and not q.is_zero(vsub(a, b)):
            return x
    return None


def maps_equal_mod(f, g, q):
    return maps_diff_mod(f, g, q) is None
