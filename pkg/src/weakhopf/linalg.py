"""Exact linear algebra over the rationals and prime fields.

Scalars over Q live in numpy object arrays as Python ints when integral and
as `fractions.Fraction` (lowest terms) otherwise, which keeps the common 0/1
structure matrices on the fast integer path.  Scalars over F_p are int64
residues in [0, p).  Everything downstream funnels through
`FieldSpec.matmul` and `FieldSpec.rref`, which dispatch to the compiled mod-p
kernels when available.

>>> F2 = FieldSpec.fp(2)
>>> i, p = split_idempotent(Matrix(F2, [[1, 1], [0, 0]]))
>>> i.tolist(), p.tolist()
([[1], [0]], [[1, 1]])
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DimensionMismatch, FieldMismatch, NotIdempotent, WeakHopfError


def _qnorm(x):
    if type(x) is int:
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


_qnorm_array = np.frompyfunc(_qnorm, 1, 1)


def _qfix(a):
    """Return a copy of an object array with every rational in canonical form."""
    out = np.zeros(a.shape, dtype=object)
    nz = np.nonzero(a)
    if len(nz[0]):
        out[nz] = _qnorm_array(a[nz])
    return out


def _qdot(a, b, out):
    """a @ b for object arrays, visiting only the nonzeros of the sparser factor.

    Every scalar operation on Fractions is a Python call, and the structure
    maps (coproducts, symmetries, units) are 0/1 matrices with a handful of
    nonzeros per column, so skipping zeros is the dominant saving.
    """
    nz_a, nz_b = np.nonzero(a), np.nonzero(b)
    if len(nz_b[0]) * a.shape[0] <= len(nz_a[0]) * b.shape[1]:
        for k, j in zip(*nz_b):
            out[:, j] += a[:, k] * b[k, j]
    else:
        for i, k in zip(*nz_a):
            out[i, :] += a[i, k] * b[k, :]
    return out


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise WeakHopfError("Q takes no characteristic")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or not _is_prime(self.p) or self.p >= 2**31:
                raise WeakHopfError(f"Fp needs a prime below 2**31, got {self.p!r}")
        else:
            raise WeakHopfError(f"unknown field kind {self.kind!r}")

    @classmethod
    def q(cls):
        return cls("Q")

    @classmethod
    def fp(cls, p):
        return cls("Fp", p)

    @classmethod
    def parse(cls, text):
        """Parse 'Q' or 'Fp:3' (also accepts 'F3')."""
        text = text.strip()
        if text == "Q":
            return cls.q()
        for prefix in ("Fp:", "F"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls.fp(int(text[len(prefix):]))
        raise WeakHopfError(f"cannot parse field {text!r}")

    @classmethod
    def from_json(cls, obj):
        if obj.get("kind") == "Q":
            return cls.q()
        return cls.fp(int(obj["p"]))

    def to_json(self):
        return {"kind": "Q"} if self.is_q else {"kind": "Fp", "p": self.p}

    def __str__(self):
        return "Q" if self.is_q else f"Fp:{self.p}"

    @property
    def is_q(self):
        return self.kind == "Q"

    @property
    def dtype(self):
        return object if self.is_q else np.int64

    # scalars

    def scalar(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if self.is_q:
            return _qnorm(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise WeakHopfError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return _qnorm(1 / Fraction(x)) if self.is_q else pow(int(x), -1, self.p)

    def format(self, x):
        return str(Fraction(x)) if self.is_q else str(int(x))

    # arrays

    def asarray(self, data):
        """Canonical 2-d array from nested lists of ints, Fractions or strings."""
        if isinstance(data, np.ndarray) and data.dtype != object and not self.is_q:
            return np.asarray(data, dtype=np.int64) % self.p
        raw = np.array(data, dtype=object)
        if raw.ndim != 2:
            if raw.size == 0:
                raw = raw.reshape(0, 0)
            else:
                raise DimensionMismatch(f"expected a 2-d array, got shape {raw.shape}")
        out = np.empty(raw.shape, dtype=self.dtype)
        for idx, v in np.ndenumerate(raw):
            out[idx] = self.scalar(v)
        return out

    def zeros(self, rows, cols):
        if self.is_q:
            out = np.empty((rows, cols), dtype=object)
            out.fill(0)
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n):
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1
        return out

    def reduce(self, a):
        return _qfix(a) if self.is_q else a % self.p

    def matmul(self, a, b):
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
        if self.is_q:
            return _qfix(_qdot(a, b, self.zeros(a.shape[0], b.shape[1])))
        return kernels.matmul_mod(np.ascontiguousarray(a), np.ascontiguousarray(b), self.p)

    def kron(self, a, b):
        if self.is_q:
            out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=object)
            for i in range(a.shape[0]):
                for j in range(a.shape[1]):
                    out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = a[i, j] * b
            return _qfix(out)
        return np.kron(a, b) % self.p

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def scale(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def rref(self, m):
        """Gauss-Jordan with the first nonzero entry of each column as pivot."""
        if not self.is_q:
            r, piv = kernels.rref_mod(np.ascontiguousarray(m, dtype=np.int64), self.p)
            return np.asarray(r), list(piv)
        r = np.array(m, dtype=object, copy=True)
        rows, cols = r.shape
        pivots = []
        row = 0
        for c in range(cols):
            if row == rows:
                break
            piv = next((i for i in range(row, rows) if r[i, c] != 0), None)
            if piv is None:
                continue
            if piv != row:
                r[[row, piv]] = r[[piv, row]]
            r[row] = r[row] * self.inv(r[row, c])
            for i in range(rows):
                if i != row and r[i, c] != 0:
                    r[i] = r[i] - r[i, c] * r[row]
            pivots.append(c)
            row += 1
        return _qfix(r), pivots

    def random_array(self, rng, rows, cols, nonzero=False, bound=3):
        """Random entries; over Q small fractions with numerators in [-bound, bound]."""
        if self.is_q:
            out = self.zeros(rows, cols)
            for idx in np.ndindex(rows, cols):
                while True:
                    num = int(rng.integers(-bound, bound + 1))
                    if num or not nonzero:
                        break
                out[idx] = _qnorm(Fraction(num, int(rng.integers(1, bound + 1))))
            return out
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.p, size=(rows, cols)).astype(np.int64)


class Matrix:
    """Immutable exact matrix tied to a field."""

    __slots__ = ("field", "a")

    def __init__(self, field, data):
        object.__setattr__(self, "field", field)
        a = data.copy() if _canonical(field, data) else field.asarray(data)
        object.__setattr__(self, "a", a)
        self.a.flags.writeable = False

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.eye(n))

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field.zeros(rows, cols))

    @property
    def shape(self):
        return self.a.shape

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other):
        self._check(other)
        return Matrix(self.field, self.field.matmul(self.a, other.a))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.sub(self.a, other.a))

    def __neg__(self):
        return Matrix(self.field, self.field.reduce(-self.a))

    def kron(self, other):
        self._check(other)
        return Matrix(self.field, self.field.kron(self.a, other.a))

    def transpose(self):
        return Matrix(self.field, np.ascontiguousarray(self.a.T))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    __hash__ = None

    def is_zero(self):
        return bool(np.all(self.a == 0))

    def rref(self):
        r, piv = self.field.rref(self.a)
        return Matrix(self.field, r), piv

    def rank(self):
        return len(self.field.rref(self.a)[1])

    def tolist(self):
        return [[Fraction(x) if self.field.is_q else int(x) for x in row] for row in self.a]

    def to_json(self):
        return [[self.field.format(x) for x in row] for row in self.a]

    @classmethod
    def from_json(cls, field, rows, shape=None):
        if shape is not None and len(rows) == 0:
            return cls.zeros(field, *shape)
        return cls(field, [[field.scalar(x) for x in row] for row in rows])

    def key(self):
        """Lexicographic sort key on the row-major serialization."""
        return tuple(self.field.format(x) for x in self.a.ravel())

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_json()})"


def _canonical(field, data):
    if not isinstance(data, np.ndarray) or data.ndim != 2:
        return False
    if field.is_q:
        return data.dtype == object and all(
            type(x) is int or (type(x) is Fraction and x.denominator != 1) for x in data.flat)
    return data.dtype == np.int64 and (data.size == 0 or (data.min() >= 0 and data.max() < field.p))


def solve_affine(m, b):
    """Solve m x = b exactly.

    Returns (particular, nullspace_basis); particular is None when the system
    is inconsistent.  Free variables are set to zero in the particular
    solution, and the nullspace basis has one vector per free column, in
    column order.
    """
    if not isinstance(m, Matrix) or not isinstance(b, Matrix):
        raise TypeError("solve_affine expects Matrix arguments")
    if m.field != b.field:
        raise FieldMismatch(f"{m.field} vs {b.field}")
    if b.rows != m.rows or b.cols != 1:
        raise DimensionMismatch(f"rhs shape {b.shape} does not fit {m.shape}")
    f = m.field
    n = m.cols
    aug = np.concatenate([m.a, b.a], axis=1) if m.rows else f.zeros(0, n + 1)
    r, pivots = f.rref(aug)
    null = _nullspace_from_rref(f, r, [c for c in pivots if c < n], n)
    if n in pivots:
        return None, null
    x = f.zeros(n, 1)
    for row, c in enumerate(pivots):
        x[c, 0] = r[row, n]
    return Matrix(f, x), null


def _nullspace_from_rref(f, r, pivots, n):
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = f.zeros(n, 1)
        v[fc, 0] = f.scalar(1)
        for row, c in enumerate(pivots):
            v[c, 0] = f.scalar(-r[row, fc])
        basis.append(Matrix(f, v))
    return basis


def nullspace(m):
    r, pivots = m.field.rref(m.a)
    return _nullspace_from_rref(m.field, r, pivots, m.cols)


def split_idempotent(q):
    """Rank factorisation q = i p with p i = id_r, for an idempotent q.

    p is the block of nonzero rows of rref(q) and i the pivot columns of q,
    so the split is deterministic.
    """
    if q.rows != q.cols:
        raise DimensionMismatch(f"idempotent must be square, got {q.shape}")
    if not (q @ q) == q:
        raise NotIdempotent("q o q != q")
    r, pivots = q.field.rref(q.a)
    k = len(pivots)
    i = Matrix(q.field, np.ascontiguousarray(q.a[:, pivots]).reshape(q.rows, k))
    p = Matrix(q.field, np.ascontiguousarray(r[:k]).reshape(k, q.cols))
    assert p @ i == Matrix.identity(q.field, k)
    return i, p
