"""Strict symmetric monoidal category of finite-dimensional vector spaces.

Objects are dimensions (the unit object K has dimension 1).  A morphism
f: m -> n is an n x m matrix, so composition is matrix product and the
tensor product is the Kronecker product with e_i (x) e_j at index
i * dim2 + j.

Large composites such as the coproduct of H^(x)4 never need to be stored as
one dense matrix.  A `Mor` is therefore one of four node kinds:

* dense  -- an explicit cod x dom array
* perm   -- a permutation of basis vectors (identities, symmetries)
* kron   -- a tensor product of factors, applied factor by factor
* chain  -- a composite, applied right to left

Small results are collapsed to dense eagerly; `Mor.array` materialises
anything on demand.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, FieldMismatch
from .linalg import FieldSpec, Matrix

# results up to this many entries are stored densely
SMALL = 1 << 16
_CHUNK = 1 << 20


class Mor:
    __slots__ = ("dom", "cod", "field", "kind", "data", "_dense", "_ident")

    def __init__(self, field, dom, cod, kind, data):
        self.field = field
        self.dom = dom
        self.cod = cod
        self.kind = kind
        self.data = data
        self._dense = data if kind == "dense" else None
        self._ident = None

    # construction

    @classmethod
    def dense(cls, field, array):
        a = field.asarray(array) if not isinstance(array, np.ndarray) or array.ndim != 2 else array
        return cls(field, a.shape[1], a.shape[0], "dense", a)

    @classmethod
    def from_matrix(cls, m):
        return cls(m.field, m.cols, m.rows, "dense", m.a)

    @classmethod
    def from_rows(cls, field, rows, dom=None):
        """Build from nested lists; `dom` disambiguates an empty codomain."""
        a = field.asarray(rows) if rows else field.zeros(0, dom or 0)
        return cls(field, a.shape[1], a.shape[0], "dense", a)

    @classmethod
    def perm(cls, field, perm):
        perm = np.asarray(perm, dtype=np.int64)
        return cls(field, len(perm), len(perm), "perm", perm)

    # evaluation

    def apply(self, x):
        """Apply to the columns of an array of shape (dom, b)."""
        if x.shape[0] != self.dom:
            raise DimensionMismatch(f"cannot apply {self.dom}-dim morphism to {x.shape[0]} rows")
        k = self.kind
        if k == "dense":
            return self.field.matmul(self.data, x)
        if k == "perm":
            if self.is_identity:
                return x
            out = np.empty_like(x)
            out[self.data] = x
            return out
        if k == "chain":
            for f in self.data:
                x = f.apply(x)
            return x
        b = x.shape[1]
        y = x.reshape(tuple(f.dom for f in self.data) + (b,))
        for axis, f in enumerate(self.data):
            if f.is_identity:
                continue
            y = np.moveaxis(y, axis, 0)
            rest = y.shape[1:]
            z = f.apply(np.ascontiguousarray(y).reshape(f.dom, -1))
            y = np.moveaxis(z.reshape((f.cod,) + rest), 0, axis)
        return np.ascontiguousarray(y).reshape(self.cod, b)

    @property
    def array(self):
        if self._dense is None:
            if self.kind == "perm":
                a = self.field.zeros(self.cod, self.dom)
                a[self.data, np.arange(self.dom)] = self.field.scalar(1)
            else:
                a = self.apply(self.field.eye(self.dom))
            a.flags.writeable = False
            self._dense = a
        return self._dense

    @property
    def mat(self):
        return Matrix(self.field, self.array)

    @property
    def is_identity(self):
        if self._ident is None:
            self._ident = self.kind == "perm" and bool(np.array_equal(self.data, np.arange(self.dom)))
        return self._ident

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        if self.field != other.field or self.dom != other.dom or self.cod != other.cod:
            return False
        if self.kind == "perm" and other.kind == "perm":
            return bool(np.array_equal(self.data, other.data))
        if self._dense is not None and other._dense is not None:
            return bool(np.all(self._dense == other._dense))
        step = max(1, _CHUNK // max(1, self.cod))
        for s in range(0, self.dom, step):
            e = min(self.dom, s + step)
            cols = self.field.zeros(self.dom, e - s)
            cols[np.arange(s, e), np.arange(e - s)] = self.field.scalar(1)
            if not np.all(self.apply(cols) == other.apply(cols)):
                return False
        return True

    __hash__ = None

    def is_zero(self):
        return bool(np.all(self.array == 0))

    def rank(self):
        return self.mat.rank()

    def to_json(self):
        return {"dom": self.dom, "cod": self.cod, "field": self.field.to_json(), "mat": self.mat.to_json()}

    @classmethod
    def from_json(cls, obj, field=None):
        field = field or FieldSpec.from_json(obj["field"])
        m = Matrix.from_json(field, obj["mat"], shape=(obj["cod"], obj["dom"]))
        if m.shape != (obj["cod"], obj["dom"]):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match {obj['dom']} -> {obj['cod']}")
        return cls.from_matrix(m)

    def __repr__(self):
        return f"Mor({self.dom} -> {self.cod}, {self.kind}, {self.field})"


def ident(n, field):
    return Mor.perm(field, np.arange(n))


def swap(m, n, field):
    """Symmetry c_{m,n}: e_i (x) e_j -> e_j (x) e_i."""
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    return Mor.perm(field, (j * m + i).ravel())


def _check_pair(g, f):
    if g.field != f.field:
        raise FieldMismatch(f"{g.field} vs {f.field}")


def _compose2(g, f):
    _check_pair(g, f)
    if g.dom != f.cod:
        raise DimensionMismatch(f"cannot compose: outer dom {g.dom} vs inner cod {f.cod}")
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    if g.kind == "perm" and f.kind == "perm":
        return Mor.perm(f.field, g.data[f.data])
    if (f._dense is not None or f.cod * f.dom <= SMALL) and g.cod * f.dom <= SMALL:
        return Mor(f.field, f.dom, g.cod, "dense", g.apply(f.array))
    parts = []
    for h in (f, g):
        parts.extend(h.data if h.kind == "chain" else (h,))
    return Mor(f.field, f.dom, g.cod, "chain", tuple(parts))


def compose(*fs):
    """compose(f1, ..., fk) = f1 o ... o fk (fk is applied first)."""
    if not fs:
        raise ValueError("compose needs at least one morphism")
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = _compose2(g, out)
    return out


def _tensor2(f, g):
    _check_pair(f, g)
    if f.dom == 1 and f.cod == 1 and f.is_identity:
        return g
    if g.dom == 1 and g.cod == 1 and g.is_identity:
        return f
    if f.kind == "perm" and g.kind == "perm":
        return Mor.perm(f.field, (f.data[:, None] * g.cod + g.data[None, :]).ravel())
    dom, cod = f.dom * g.dom, f.cod * g.cod
    if dom * cod <= SMALL and f.dom * f.cod <= SMALL and g.dom * g.cod <= SMALL:
        return Mor(f.field, dom, cod, "dense", f.field.kron(f.array, g.array))
    parts = []
    for h in (f, g):
        parts.extend(h.data if h.kind == "kron" else (h,))
    return Mor(f.field, dom, cod, "kron", tuple(parts))


def tensor(*fs):
    """f1 (x) ... (x) fk, left factor major."""
    if not fs:
        raise ValueError("tensor needs at least one morphism")
    out = fs[0]
    for g in fs[1:]:
        out = _tensor2(out, g)
    return out


def tpow(f, n):
    """n-fold tensor power; the 0-th power is the identity of K."""
    return tensor(*([f] * n)) if n > 0 else ident(1, f.field)
