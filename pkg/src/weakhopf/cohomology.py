"""The Sweedler cosimplicial complex of a cocommutative weak Hopf algebra H
with coefficients in a commutative (strict) left H-module algebra A.

Degree-n cochains are maps H^(x)n -> A for n >= 1 and maps H_L -> A in
degree 0, where H_L is the image of the target map piL.  The group
structure is convolution, f ^ g = mu_A o (f (x) g) o delta_{H^n}; a cochain
is regular when it has a convolution inverse relative to the unit u_n.

Inverses are found by exact linear algebra, never by search: f ^ x = u,
x ^ f = u and u ^ x ^ u = x are all linear in x.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import (
    BadDegree, BadIndex, BudgetExceeded, ConditionFailed, DegreeMismatch, NotCocommutative,
    NotCommutative, NotRegular, NotStrictModuleAlgebra, WeakHopfError,
)
from .linalg import Matrix, solve_affine, split_idempotent
from .modalg import require_valid, u_map
from .moncat import Mor, compose as C, tensor as T


def hl_split(H):
    """Split the target map: piL = iL o pL with pL o iL = id on H_L."""
    cache = H.__dict__.setdefault("_hl", {})
    if "split" not in cache:
        if not H.cocommutative:
            raise NotCocommutative("H_L splitting is used only for cocommutative H")
        i, p = split_idempotent(H.piL.mat)
        cache["split"] = (Mor.from_matrix(i), Mor.from_matrix(p))
    return cache["split"]


def hl_coalgebra(H):
    """(delta_L, eps_L) on H_L, transported along the split."""
    iL, pL = hl_split(H)
    return C(T(pL, pL), H.delta, iL), C(H.eps, iL)


@dataclass(frozen=True, eq=False)
class Cochain:
    ctx: object
    degree: int
    mor: Mor
    inv: Mor | None = field(default=None, compare=False)

    @property
    def mat(self):
        return self.mor.mat

    def key(self):
        return tuple(int(x) for x in self.mor.array.ravel()) if not self.mor.field.is_q else self.mat.key()

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.mor == other.mor

    __hash__ = None

    def to_json(self):
        out = {"degree": self.degree, "matrix": self.mat.to_json()}
        if self.inv is not None:
            out["inv"] = self.inv.mat.to_json()
        return out

    @classmethod
    def from_json(cls, ctx, obj):
        k = int(obj["degree"])
        cx = complex_of(ctx)
        dom, a = cx.source_dim(k), ctx.A.dim
        mor = Mor.from_json({"dom": dom, "cod": a, "mat": obj["matrix"]}, field=ctx.field)
        inv = None
        if obj.get("inv") is not None:
            inv = Mor.from_json({"dom": dom, "cod": a, "mat": obj["inv"]}, field=ctx.field)
        return cls(ctx, k, mor, inv)


class SweedlerComplex:
    """Per-context caches: coproducts of H^(x)n, units u_n and convolution operators."""

    def __init__(self, M):
        require_valid(M)
        if M.level != "strict":
            raise NotStrictModuleAlgebra("the cosimplicial complex needs a strict module algebra")
        if not M.H.cocommutative:
            raise NotCocommutative("the cosimplicial complex needs cocommutative H")
        self.M, self.H, self.A, self.F = M, M.H, M.A, M.field
        self.iL, self.pL = hl_split(self.H)
        self.r = self.iL.dom
        self._delta = {}
        self._unit = {}
        self._ops = {}

    def source_dim(self, n):
        if n < 0:
            raise BadDegree(f"degree {n}")
        return self.r if n == 0 else self.H.d ** n

    def coproduct(self, n):
        if n not in self._delta:
            if n == 0:
                d = hl_coalgebra(self.H)[0]
            else:
                d = self.H.delta_power(n)
            self._delta[n] = Mor.dense(self.F, d.array)
        return self._delta[n]

    def unit(self, n):
        if n not in self._unit:
            self._unit[n] = Mor.dense(self.F, u_map(self.M, n).array)
        return self._unit[n]

    def conv(self, f, g, n):
        return C(self.A.mu, T(f, g), self.coproduct(n))

    def conv_operators(self, f, n):
        """Matrices L, R with vec(f ^ x) = L vec(x) and vec(x ^ f) = R vec(x) (row-major vec)."""
        F = self.F
        a, N = self.A.dim, self.source_dim(n)
        D3 = self.coproduct(n).array.reshape(N, N, N)  # [i, j, c]
        M3 = self.A.mu.array.reshape(a, a, a)  # [r, s, t]
        fa = f.array
        fd = F.matmul(fa, np.ascontiguousarray(D3).reshape(N, N * N))  # [s, (j, c)]
        k = F.matmul(np.ascontiguousarray(M3.transpose(0, 2, 1)).reshape(a * a, a), fd)  # [(r, t), (j, c)]
        left = k.reshape(a, a, N, N).transpose(0, 3, 1, 2).reshape(a * N, a * N)
        fd2 = F.matmul(fa, np.ascontiguousarray(D3.transpose(1, 0, 2)).reshape(N, N * N))  # [t, (i, c)]
        k2 = F.matmul(np.ascontiguousarray(M3).reshape(a * a, a), fd2)  # [(r, s), (i, c)]
        right = k2.reshape(a, a, N, N).transpose(0, 3, 1, 2).reshape(a * N, a * N)
        return np.ascontiguousarray(left), np.ascontiguousarray(right)

    def support_operator(self, n):
        """Matrix of x -> u ^ x ^ u - x; its kernel contains every regular cochain."""
        if ("supp", n) not in self._ops:
            Lu, Ru = self.conv_operators(self.unit(n), n)
            N = Lu.shape[0]
            self._ops[("supp", n)] = self.F.sub(self.F.matmul(Ru, Lu), self.F.eye(N))
        return self._ops[("supp", n)]

    def normalization_constraints(self, n):
        """(G, b) with G vec(f) = b exactly when f is normalized."""
        if ("norm", n) in self._ops:
            return self._ops[("norm", n)]
        F, H, A = self.F, self.H, self.A
        a = A.dim
        if n == 0:
            pairs = [(C(self.pL, H.eta), A.eta)]
        elif n == 1:
            pairs = [(self.iL, self.unit(0))]
        else:
            pairs = [(_degeneracy_map(H, n, i), self.unit(n - 1)) for i in range(n)]
        G = np.concatenate([F.kron(F.eye(a), np.ascontiguousarray(E.array.T)) for E, _ in pairs], axis=0)
        b = np.concatenate([u.array.reshape(-1, 1) for _, u in pairs], axis=0)
        self._ops[("norm", n)] = (G, b)
        return G, b


def complex_of(M):
    if "complex" not in M._cache:
        M._cache["complex"] = SweedlerComplex(M)
    return M._cache["complex"]


def _degeneracy_map(H, k, i):
    """H^i (x) eta (x) H^(k-1-i): H^(k-1) -> H^k."""
    return T(H.id(i), H.eta, H.id(k - 1 - i))


def _as_cochain(M, n, f):
    if isinstance(f, Cochain):
        return f
    cx = complex_of(M)
    if (f.dom, f.cod) != (cx.source_dim(n), M.A.dim):
        raise DegreeMismatch(f"map {f.dom} -> {f.cod} is not a degree {n} cochain")
    return Cochain(M, n, f)


def make_cochain(M, n, mat):
    """Wrap a Matrix, Mor or nested list as a degree-n cochain."""
    if isinstance(mat, Matrix):
        mor = Mor.from_matrix(mat)
    elif isinstance(mat, Mor):
        mor = mat
    else:
        mor = Mor.dense(M.field, M.field.asarray(mat))
    return _as_cochain(M, n, mor)


def unit_cochain(M, n):
    u = complex_of(M).unit(n)
    return Cochain(M, n, u, u)


def convolution(f, g):
    if f.degree != g.degree:
        raise DegreeMismatch(f"{f.degree} vs {g.degree}")
    cx = complex_of(f.ctx)
    mor = cx.conv(f.mor, g.mor, f.degree)
    inv = cx.conv(g.inv, f.inv, f.degree) if f.inv is not None and g.inv is not None else None
    return Cochain(f.ctx, f.degree, mor, inv)


def reg_inverse(f, limit=10**4):
    """Relative convolution inverse of f, or None when f is not regular."""
    M, n = f.ctx, f.degree
    cx = complex_of(M)
    F = cx.F
    u = cx.unit(n)
    if cx.conv(cx.conv(u, f.mor, n), u, n) != f.mor:
        return None
    L, R = cx.conv_operators(f.mor, n)
    S = cx.support_operator(n)
    K = L.shape[0]
    uvec = u.array.reshape(-1, 1)
    system = np.concatenate([L, R, S], axis=0)
    rhs = np.concatenate([uvec, uvec, F.zeros(K, 1)], axis=0)
    x, null = solve_affine(Matrix(F, system), Matrix(F, rhs))
    if x is None:
        return None
    shape = f.mor.array.shape

    def candidate(vec):
        return Mor.dense(F, np.ascontiguousarray(vec.a.reshape(shape)))

    def good(g):
        gfg = cx.conv(cx.conv(g, f.mor, n), g, n)
        fgf = cx.conv(cx.conv(f.mor, g, n), f.mor, n)
        return gfg == g and fgf == f.mor

    best = candidate(x)
    if null and not F.is_q and F.p ** len(null) <= limit:
        # the solution set is an affine space; keep the smallest valid point
        pool = []
        for coeffs in product(range(F.p), repeat=len(null)):
            v = x
            for cf, b in zip(coeffs, null):
                if cf:
                    v = v + Matrix(F, F.scale(cf, b.a))
            g = candidate(v)
            if good(g):
                pool.append(g)
        if not pool:
            return None
        best = min(pool, key=lambda g: tuple(int(t) for t in g.array.ravel()))
    if not good(best):
        return None
    return Cochain(M, n, best, f.mor)


def regular(f):
    """f with its inverse attached; raises NotRegular."""
    if f.inv is not None:
        return f
    g = reg_inverse(f)
    if g is None:
        raise NotRegular(f"degree {f.degree} cochain has no relative inverse")
    return Cochain(f.ctx, f.degree, f.mor, g.mor)


def inverse(f):
    f = regular(f)
    return Cochain(f.ctx, f.degree, f.inv, f.mor)


def _face_mor(M, k, i, g):
    H, cx = M.H, complex_of(M)
    if k == 0:
        if i == 0:
            return C(M.phi, T(H.id(), C(g, cx.pL, H.piR)), H.delta)
        return C(g, cx.pL)
    if i == 0:
        return C(M.phi, T(H.id(), g))
    if i <= k:
        return C(g, T(H.id(i - 1), H.mu, H.id(k - i)))
    return C(g, T(H.id(k - 1), C(H.mu, T(H.id(), H.piL))))


def coface(k, i, f):
    """The i-th coface from degree k to degree k + 1 (0 <= i <= k + 1)."""
    if f.degree != k:
        raise DegreeMismatch(f"cochain has degree {f.degree}, coface expects {k}")
    if not 0 <= i <= k + 1:
        raise BadIndex(f"coface index {i} out of range for degree {k}")
    mor = _face_mor(f.ctx, k, i, f.mor)
    inv = _face_mor(f.ctx, k, i, f.inv) if f.inv is not None else None
    return Cochain(f.ctx, k + 1, mor, inv)


def codegeneracy(k, i, f):
    """The i-th codegeneracy from degree k to degree k - 1 (0 <= i <= k - 1)."""
    if f.degree != k:
        raise DegreeMismatch(f"cochain has degree {f.degree}, codegeneracy expects {k}")
    if k < 1 or not 0 <= i <= k - 1:
        raise BadIndex(f"codegeneracy index {i} out of range for degree {k}")
    M = f.ctx
    if k == 1:
        return Cochain(M, 0, C(f.mor, complex_of(M).iL))
    return Cochain(M, k - 1, C(f.mor, _degeneracy_map(M.H, k, i)))


def coboundary(k, f):
    """D^k f = d_0 f ^ (d_1 f)^-1 ^ d_2 f ^ ... with alternating inverses."""
    f = regular(f)
    finv = inverse(f)
    terms = [coface(k, i, f if i % 2 == 0 else finv) for i in range(k + 2)]
    out = terms[0]
    for t in terms[1:]:
        out = convolution(out, t)
    return out


def is_normalized(f):
    """Membership of the normalized subcomplex, via the codegeneracies.

    For regular cochains of degree 1 and 2 the equivalent unit-value
    characterizations are evaluated as well and must agree.
    """
    M = f.ctx
    cx = complex_of(M)
    G, b = cx.normalization_constraints(f.degree)
    vec = f.mor.array.reshape(-1, 1)
    out = bool(np.all(cx.F.matmul(G, vec) == b))
    if f.inv is None and f.degree in (1, 2) and reg_inverse(f) is None:
        return out
    H = M.H
    if f.degree == 1:
        other = C(f.mor, H.eta) == M.A.eta
    elif f.degree == 2:
        u1 = M.u1
        other = (C(f.mor, T(H.piL, H.id()), H.delta) == u1 and C(f.mor, T(H.id(), H.piR), H.delta) == u1)
    else:
        return out
    if other != out:
        raise ConditionFailed("normalized-characterization", f"codegeneracy test {out}, unit test {other}")
    return out


def is_regular(f):
    return f.inv is not None or reg_inverse(f) is not None


# enumeration

def _linear_constraints(cx, n, normalized):
    S = cx.support_operator(n)
    rhs = cx.F.zeros(S.shape[0], 1)
    if not normalized:
        return S, rhs
    G, b = cx.normalization_constraints(n)
    return np.concatenate([S, G], axis=0), np.concatenate([rhs, b], axis=0)


def candidate_count(M, n):
    cx = complex_of(M)
    return M.field.p ** (cx.source_dim(n) * M.A.dim)


def enumerate_cochains(M, n, normalized=True, budget=10**6, prefilter=False):
    """All regular (optionally normalized) degree-n cochains, in lexicographic order.

    The default walks every map H^(x)n -> A and keeps those satisfying the
    linear necessary conditions before solving for an inverse; the budget
    bounds the number of maps walked.  With prefilter=True only the affine
    subspace cut out by those linear conditions is walked, and the budget
    bounds its size instead.
    """
    F = M.field
    if F.is_q:
        raise WeakHopfError("enumeration needs a finite field")
    cx = complex_of(M)
    p = F.p
    N, a = cx.source_dim(n), M.A.dim
    K = N * a
    G, b = _linear_constraints(cx, n, normalized)
    if prefilter:
        x, null = solve_affine(Matrix(F, G), Matrix(F, b))
        if x is None:
            return []
        if p ** len(null) > budget:
            raise BudgetExceeded(p ** len(null), budget)
        if null:
            basis = np.stack([v.a.ravel() for v in null])
            coeffs = np.array(list(product(range(p), repeat=len(null))), dtype=np.int64)
            cands = (x.a.ravel()[None, :] + F.matmul(coeffs, basis)) % p
        else:
            cands = x.a.reshape(1, K)
        order = np.lexsort(cands.T[::-1])
        survivors = cands[order]
    else:
        total = p ** K
        if total > budget:
            raise BudgetExceeded(total, budget)
        weights = p ** np.arange(K - 1, -1, -1, dtype=np.int64)
        keep = []
        step = 1 << 16
        for s in range(0, total, step):
            idx = np.arange(s, min(total, s + step), dtype=np.int64)
            cands = (idx[:, None] // weights[None, :]) % p
            ok = np.all(F.matmul(G, np.ascontiguousarray(cands.T)) == b, axis=0)
            keep.append(cands[ok])
        survivors = np.concatenate(keep, axis=0)
    out = []
    for row in survivors:
        f = Cochain(M, n, Mor.dense(F, np.ascontiguousarray(row.reshape(a, N))))
        g = reg_inverse(f)
        if g is not None:
            out.append(Cochain(M, n, f.mor, g.mor))
    return out


def enumerate_reg_plus(n, M, budget=10**6, prefilter=False):
    return enumerate_cochains(M, n, True, budget, prefilter)


def random_regular(M, n, rng, tries=500):
    """Sample a regular cochain: random entries, projected by u ^ - ^ u, kept if invertible."""
    cx = complex_of(M)
    F = M.field
    u = cx.unit(n)
    shape = (M.A.dim, cx.source_dim(n))
    for _ in range(tries):
        raw = Mor.dense(F, F.random_array(rng, *shape, nonzero=True))
        f = Cochain(M, n, cx.conv(cx.conv(u, raw, n), u, n))
        g = reg_inverse(f)
        if g is not None:
            return Cochain(M, n, f.mor, g.mor)
    raise NotRegular(f"no regular cochain found in {tries} samples")


# cohomology

@dataclass
class CohomologyResult:
    degree: int
    order: int
    class_reps: list
    cocycles: list
    coboundaries: list
    normalized: bool = True

    def to_json(self):
        return {"degree": self.degree, "order": self.order, "normalized": self.normalized,
                "cocycle_count": len(self.cocycles), "coboundary_count": len(self.coboundaries),
                "class_reps": [c.mat.to_json() for c in self.class_reps]}


def cohomology(M, degree=2, budget=10**6, normalized=True, prefilter=False):
    """H^degree as Ker D^degree / Im D^(degree - 1), by enumeration (degree 1 or 2)."""
    if degree not in (1, 2):
        raise BadDegree("cohomology is computed in degrees 1 and 2")
    if not M.A.commutative:
        raise NotCommutative("cohomology groups need a commutative coefficient algebra")
    cx = complex_of(M)
    u_next = cx.unit(degree + 1)
    cocycles = [s for s in enumerate_cochains(M, degree, normalized, budget, prefilter)
                if coboundary(degree, s).mor == u_next]
    bounds = {}
    for h in enumerate_cochains(M, degree - 1, normalized, budget, prefilter):
        b = coboundary(degree - 1, h)
        bounds.setdefault(b.key(), b)
    by_key = {s.key(): s for s in cocycles}
    for k in bounds:
        if k not in by_key:
            raise ConditionFailed("coboundary-is-cocycle", "a coboundary is missing from the cocycles")
    seen, reps = set(), []
    for s in sorted(cocycles, key=Cochain.key):
        if s.key() in seen:
            continue
        coset = [convolution(s, b) for b in bounds.values()]
        keys = {c.key() for c in coset}
        if not keys <= set(by_key):
            raise ConditionFailed("coset-closed", "a translate of a cocycle left the cocycle set")
        seen |= keys
        reps.append(by_key[min(keys)])
    return CohomologyResult(degree, len(reps), reps, cocycles, list(bounds.values()), normalized)


def cohomology_h2(M, budget=10**6, normalized=True, prefilter=False):
    return cohomology(M, 2, budget, normalized, prefilter)


def same_class(M, a, b, coboundaries):
    """a ~ b iff a ^ b^-1 is among the given coboundaries (commutative case)."""
    d = convolution(regular(a), inverse(b))
    keys = {c.key() for c in coboundaries}
    return d.key() in keys
