"""Algebras and weak left H-module algebras (A, phi)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BadDegree, ConditionFailed, DimensionMismatch, FieldMismatch, ValidationError
from .hopf import AxiomReport, WeakHopf, load_weak_hopf, validate_weak_hopf
from .linalg import FieldSpec
from .moncat import Mor, compose as C, ident, swap, tensor as T


class Algebra:
    """Unital associative algebra with structure maps eta: K -> A, mu: A (x) A -> A."""

    def __init__(self, field, dim, eta, mu, name=""):
        if (eta.dom, eta.cod) != (1, dim) or (mu.dom, mu.cod) != (dim * dim, dim):
            raise DimensionMismatch("algebra structure maps have the wrong shape")
        self.field, self.dim, self.eta, self.mu, self.name = field, dim, eta, mu, name

    @cached_property
    def I(self):
        return ident(self.dim, self.field)

    @cached_property
    def c(self):
        return swap(self.dim, self.dim, self.field)

    @cached_property
    def commutative(self):
        return C(self.mu, self.c) == self.mu

    def validate(self):
        I, mu, eta = self.I, self.mu, self.eta
        return AxiomReport({
            "assoc": C(mu, T(mu, I)) == C(mu, T(I, mu)),
            "unit": C(mu, T(eta, I)) == I and C(mu, T(I, eta)) == I,
        })

    def to_json(self):
        return {"dim": self.dim, "eta": self.eta.mat.to_json(), "mu": self.mu.mat.to_json()}

    @classmethod
    def from_json(cls, obj, field):
        d = int(obj["dim"])
        eta = Mor.from_json({"dom": 1, "cod": d, "mat": obj["eta"]}, field=field)
        mu = Mor.from_json({"dom": d * d, "cod": d, "mat": obj["mu"]}, field=field)
        return cls(field, d, eta, mu, obj.get("name", ""))


@dataclass
class ModuleAlgebra:
    """phi: H (x) A -> A making A a weak left H-module algebra.

    `level` is "strict" when phi o (mu_H (x) A) = phi o (H (x) phi) holds,
    otherwise "weak".
    """

    H: WeakHopf
    A: Algebra
    phi: Mor
    name: str = ""

    def __post_init__(self):
        if self.H.field != self.A.field or self.phi.field != self.H.field:
            raise FieldMismatch("H, A and phi must share a field")
        if (self.phi.dom, self.phi.cod) != (self.H.d * self.A.dim, self.A.dim):
            raise DimensionMismatch("phi must map H (x) A to A")
        self._cache = {}

    @property
    def field(self):
        return self.H.field

    @cached_property
    def report(self):
        return validate_module_algebra(self)

    @property
    def level(self):
        return "strict" if self.report.results.get("b3-1") else "weak"

    @property
    def valid(self):
        r = self.report.results
        return all(r[k] for k in r if k != "b3-1")

    @cached_property
    def u1(self):
        return C(self.phi, T(self.H.id(), self.A.eta))

    def to_json(self):
        return {"hopf": self.H.to_json(), "algebra": self.A.to_json(), "phi": self.phi.mat.to_json(),
                "name": self.name}


def validate_module_algebra(M):
    """Evaluate (b1)-(b9) and the strict associativity (b3-1) independently."""
    H, A, phi = M.H, M.A, M.phi
    IH, IA = H.id(), A.I
    etaA, muA = A.eta, A.mu
    u1 = M.u1
    em = H.eps_mu
    r = {}
    r["H-valid"] = validate_weak_hopf(H).valid
    r["A-valid"] = A.validate().valid
    r["b1"] = C(phi, T(H.eta, IA)) == IA
    r["b2"] = C(phi, T(IH, muA)) == C(muA, T(phi, phi), T(IH, swap(H.d, A.dim, M.field), IA), T(H.delta, IA, IA))
    r["b3"] = C(phi, T(H.mu, etaA)) == C(phi, T(IH, u1))
    r["b4"] = C(phi, T(H.piL, IA)) == C(muA, T(u1, IA))
    r["b5"] = C(phi, T(H.pibarL, IA)) == C(muA, A.c, T(u1, IA))
    r["b6"] = C(phi, T(H.piL, etaA)) == u1
    r["b7"] = C(phi, T(H.pibarL, etaA)) == u1
    r["b8"] = C(phi, T(IH, u1)) == C(T(u1, em), T(H.delta, IH))
    r["b9"] = C(phi, T(IH, u1)) == C(T(em, u1), T(IH, H.c), T(H.delta, IH))
    r["b3-1"] = C(phi, T(H.mu, IA)) == C(phi, T(IH, phi))
    return AxiomReport(r)


def require_valid(M):
    rep = M.report
    bad = [k for k, v in rep.results.items() if not v and k != "b3-1"]
    if bad:
        raise ValidationError(bad)
    return M


def u_map(M, n):
    """u_n: H^(x)n -> A.  u_1 = phi o (H (x) eta_A), u_n = phi o (m^n (x) eta_A)."""
    if n < 0:
        raise BadDegree(f"u_{n}")
    if n == 0:
        from .cohomology import hl_split  # local import: H_L lives with the complex

        iL, _ = hl_split(M.H)
        return C(M.u1, iL)
    key = ("u", n)
    if key not in M._cache:
        H = M.H
        if n == 1:
            out = M.u1
        else:
            out = C(M.phi, T(H.mult_power(n), M.A.eta))
            other = C(iterated_action(M, n - 1, check=False), T(H.id(n - 1), M.u1))
            if out != other:
                raise ConditionFailed("u_n two forms", f"n={n}")
        M._cache[key] = out
    return M._cache[key]


def iterated_action(M, n, check=True):
    """phi^n = phi o (H (x) phi^(n-1)): H^(x)n (x) A -> A."""
    if n < 1:
        raise BadDegree(f"phi^{n}")
    key = ("phi", n)
    if key not in M._cache:
        if n == 1:
            out = M.phi
        else:
            out = C(M.phi, T(M.H.id(), iterated_action(M, n - 1, check=False)))
        M._cache[key] = out
    out = M._cache[key]
    if check and n > 1 and M.level == "strict":
        if out != C(M.phi, T(M.H.mult_power(n), M.A.I)):
            raise ConditionFailed("iterated action", f"n={n}")
    return out


def load_module_algebra(obj, field=None):
    """From {"hopf": ..., "algebra": {dim, eta, mu}, "phi": matrix | "trivial" | "translation"}."""
    from . import fixtures

    f = field or FieldSpec.from_json(obj.get("field") or obj["hopf"]["field"])
    H = load_weak_hopf(obj["hopf"], field=f)
    alg = obj["algebra"]
    if alg == "functions-on-objects":
        A = fixtures.functions_on_objects(H.groupoid, f)
    else:
        A = Algebra.from_json(alg, f)
    phi = obj["phi"]
    if phi == "trivial":
        phi = fixtures.trivial_action(H, A)
    elif phi == "translation":
        phi = fixtures.translation_action(H, A)
    else:
        phi = Mor.from_json({"dom": H.d * A.dim, "cod": A.dim, "mat": phi}, field=f)
    return ModuleAlgebra(H, A, phi, obj.get("name", ""))
