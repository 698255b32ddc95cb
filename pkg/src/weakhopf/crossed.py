"""Weak crossed products A (x)_sigma H for a cocommutative weak Hopf algebra H.

From a module algebra (A, phi) and a degree-2 cochain sigma we build

    psi     = (phi (x) H) o (H (x) c_{H,A}) o (delta (x) A)          H (x) A -> A (x) H
    sigmaHA = (sigma (x) mu_H) o delta_{H^2}                          H (x) H -> A (x) H
    nabla   = (mu_A (x) H) o (A (x) psi) o (A (x) H (x) eta_A)        idempotent on A (x) H
    mu_big  = (mu_A (x) H) o (mu_A (x) sigmaHA) o (A (x) psi (x) H)

and split nabla to get the algebra A x H with unit p o nu, where
nu = nabla o (eta_A (x) eta_H) is the preunit.  Every identity that the
construction relies on is evaluated rather than assumed; the first one that
fails raises ConditionFailed with its label.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cohomology import Cochain, coface, convolution, regular
from .dsl import Env, eval_text
from .errors import ConditionFailed, DegreeMismatch, NotCocommutative
from .hopf import AxiomReport, omega2
from .linalg import Matrix, solve_affine, split_idempotent
from .moncat import Mor, compose as C, ident, swap, tensor as T


# psi and nabla

def _parts(M):
    H, A = M.H, M.A
    return H, A, H.id(), A.I


def psi_map(M):
    """psi_H^A; raises ConditionFailed("wmeas") if it is not a weak measuring."""
    if "psi" not in M._cache:
        H, A, IH, IA = _parts(M)
        psi = C(T(M.phi, IH), T(IH, swap(H.d, A.dim, M.field)), T(H.delta, IA))
        lhs = C(T(A.mu, IH), T(IA, psi), T(psi, IA))
        if lhs != C(psi, T(IH, A.mu)):
            raise ConditionFailed("wmeas", "(mu_A (x) H) o (A (x) psi) o (psi (x) A) != psi o (H (x) mu_A)")
        M._cache["psi"] = Mor.dense(M.field, psi.array)
    return M._cache["psi"]


def nabla_map(M):
    """The idempotent nabla on A (x) H, computed two ways and checked."""
    if "nabla" not in M._cache:
        H, A, IH, IA = _parts(M)
        psi = psi_map(M)
        first = C(T(A.mu, IH), T(IA, psi), T(IA, IH, A.eta))
        second = C(T(C(A.mu, T(IA, M.u1)), IH), T(IA, H.delta))
        if first != second:
            raise ConditionFailed("nabla-nabla", "the two formulas for nabla disagree")
        if C(first, first) != first:
            raise ConditionFailed("nabla-idempotent", "nabla o nabla != nabla")
        M._cache["nabla"] = Mor.dense(M.field, first.array)
    return M._cache["nabla"]


def nabla_split(M):
    """(i, p) with i o p = nabla and p o i = id, by deterministic pivoting."""
    if "nabla_split" not in M._cache:
        i, p = split_idempotent(nabla_map(M).mat)
        M._cache["nabla_split"] = (Mor.from_matrix(i), Mor.from_matrix(p))
    return M._cache["nabla_split"]


def psi_identities(M):
    H, A, IH, IA = _parts(M)
    psi, nab, u1, phi = psi_map(M), nabla_map(M), M.u1, M.phi
    muA_H = T(A.mu, IH)
    cHA = swap(H.d, A.dim, M.field)
    r = {}
    r["wmeas"] = C(muA_H, T(IA, psi), T(psi, IA)) == C(psi, T(IH, A.mu))
    r["nabla-idempotent"] = C(nab, nab) == nab
    r["nabla-fi"] = C(A.mu, T(u1, phi), T(H.delta, IA)) == phi
    r["nabla-fiAH"] = C(muA_H, T(u1, psi), T(H.delta, IA)) == psi
    r["eta-psi-varep"] = C(T(IA, H.eps), psi, T(IH, A.eta)) == u1
    r["eta-psi-complex"] = (C(muA_H, T(u1, cHA), T(H.delta, IA))
                            == C(muA_H, T(IA, cHA), T(C(psi, T(IH, A.eta)), IA)))
    r["nabla-varep"] = C(T(IA, H.eps), nab) == C(A.mu, T(IA, u1))
    r["nabla-delta"] = C(T(IA, H.delta), nab) == C(T(nab, IH), T(IA, H.delta))
    r["nabla-left-A-linear"] = C(nab, muA_H) == C(muA_H, T(IA, nab))
    base = C(muA_H, T(IA, psi))
    r["fi-nab-1"] = C(base, T(nab, IA)) == base
    r["fi-nab-2"] = C(nab, base) == base
    return AxiomReport(r)


# sigma

def _require_cocommutative(M):
    if not M.H.cocommutative:
        raise NotCocommutative("weak crossed products from cochains need cocommutative H")


def _degree2(sigma):
    if not isinstance(sigma, Cochain) or sigma.degree != 2:
        raise DegreeMismatch("sigma must be a degree 2 cochain")


def sigma_lift(sigma):
    """sigma_H^A = (sigma (x) mu_H) o delta_{H^2}; sigma must be regular."""
    _degree2(sigma)
    M = sigma.ctx
    _require_cocommutative(M)
    regular(sigma)
    H = M.H
    out = C(T(sigma.mor, H.mu), H.delta_power(2))
    A = M.A
    if C(T(A.I, H.delta), out) != C(T(out, H.mu), H.delta_power(2)):
        raise ConditionFailed("delta-sigmaHA", "(A (x) delta) o sigmaHA != (sigmaHA (x) mu) o delta_{H^2}")
    if C(nabla_map(M), out) != out:
        raise ConditionFailed("nabla-sigmaHA", "nabla o sigmaHA != sigmaHA")
    if C(T(A.I, H.eps), out) != sigma.mor:
        raise ConditionFailed("eps-sigmaHA", "(A (x) eps) o sigmaHA != sigma")
    return Mor.dense(M.field, out.array)


def sigma_identities(sigma):
    """Identities satisfied by every regular sigma (including the Omega ones)."""
    M = sigma.ctx
    H, A, IH, IA = _parts(M)
    s = sigma_lift(sigma)
    om = omega2(H)
    r = {}
    r["omega-sigma"] = C(sigma.mor, om) == sigma.mor
    r["omega-sigmaHA"] = C(s, om) == s
    r["omega-sigmaHA-H"] = C(T(IA, om), T(s, IH)) == C(T(s, IH), T(IH, om))
    r["face-3-omega"] = coface(2, 3, sigma).mor == C(T(sigma.mor, H.eps), T(IH, om))
    if A.commutative:
        tau = C(T(H.mu, sigma.mor), H.delta_power(2))
        r["sigma-commutative"] = s == C(swap(H.d, A.dim, M.field), tau)
    return AxiomReport(r)


def _twisted_sides(sigma):
    M = sigma.ctx
    H, A, IH, IA = _parts(M)
    psi, s = psi_map(M), sigma_lift(sigma)
    phi2 = C(M.phi, T(IH, M.phi))
    spread = C(T(IH, IH, sigma.mor), H.delta_power(2))
    lhs_s = C(A.mu, T(phi2, IA), T(IH, IH, A.c), T(spread, IA))
    rhs_s = C(A.mu, T(IA, M.phi), T(s, IA))
    muA_H = T(A.mu, IH)
    lhs_q = C(muA_H, T(IA, psi), T(s, IA))
    rhs_q = C(muA_H, T(IA, s), T(psi, IH), T(IH, psi))
    return (lhs_s, rhs_s), (lhs_q, rhs_q)


def twisted_check(sigma):
    """{"sigma_level", "quadruple_level"}; the two are equivalent and are checked to agree."""
    (ls, rs), (lq, rq) = _twisted_sides(sigma)
    out = {"sigma_level": ls == rs, "quadruple_level": lq == rq}
    if out["sigma_level"] != out["quadruple_level"]:
        raise ConditionFailed("twisted-equivalence", str(out))
    if sigma.ctx.A.commutative and not out["sigma_level"]:
        raise ConditionFailed("twisted-commutative", "twisted condition fails with commutative A")
    return out


def cocycle_check(sigma):
    """{"two_cocycle", "quadruple"}; face form, its equivalent form and the quadruple form must agree."""
    M = sigma.ctx
    H, A, IH, IA = _parts(M)
    psi, s = psi_map(M), sigma_lift(sigma)
    sg = regular(sigma)
    d = [coface(2, i, sg) for i in range(4)]
    faces = convolution(d[3], d[1]).mor == convolution(d[0], d[2]).mor
    equiv = C(A.mu, T(IA, sigma.mor), T(s, IH)) == C(A.mu, T(IA, sigma.mor), T(psi, IH), T(IH, s))
    if faces != equiv:
        raise ConditionFailed("cocycle-equivalent", f"face form {faces}, equivalent form {equiv}")
    muA_H = T(A.mu, IH)
    quad = C(muA_H, T(IA, s), T(s, IH)) == C(muA_H, T(IA, s), T(psi, IH), T(IH, s))
    if quad != faces:
        raise ConditionFailed("cocycle-quadruple", f"sigma level {faces}, quadruple level {quad}")
    return {"two_cocycle": faces, "quadruple": quad}


def normal_check(sigma):
    _degree2(sigma)
    M = sigma.ctx
    H, u1 = M.H, M.u1
    return (C(sigma.mor, T(H.eta, H.id())) == u1) and (C(sigma.mor, T(H.id(), H.eta)) == u1)


def twisted_consequences(sigma):
    """The identities that follow from the twisted condition at the quadruple level."""
    M = sigma.ctx
    H, A, IH, IA = _parts(M)
    psi, s, nab = psi_map(M), sigma_lift(sigma), nabla_map(M)
    muA_H = T(A.mu, IH)
    left = C(muA_H, T(IA, s), T(psi, IH))
    right = C(muA_H, T(IA, s))
    r = {}
    r["c1"] = C(left, T(IH, nab)) == C(nab, left)
    r["aw"] = C(nab, right, T(nab, IH)) == C(nab, right)
    r["c11"] = C(left, T(IH, nab)) == left
    r["aw1"] = C(right, T(nab, IH)) == right
    return AxiomReport(r)


# the product

def product_map(sigma):
    M = sigma.ctx
    H, A, IH, IA = _parts(M)
    s = sigma_lift(sigma)
    return Mor.dense(M.field, C(T(A.mu, IH), T(A.mu, s), T(IA, psi_map(M), IH)).array)


def preunit(M):
    return Mor.dense(M.field, C(nabla_map(M), T(M.A.eta, M.H.eta)).array)


def _is_preunit(m, nu, n):
    In = ident(n, m.field)
    a = C(m, T(In, nu))
    return a == C(m, T(nu, In)) and a == C(m, T(In, C(m, T(nu, nu))))


def _associative(m, n):
    In = ident(n, m.field)
    return C(m, T(m, In)) == C(m, T(In, m))


def corollary_check(sigma):
    """Both sides of: mu_big associative with preunit nu and nabla-normalized
    <=> sigma twisted, 2-cocycle and normal.  Returns (lhs, rhs)."""
    M = sigma.ctx
    n = M.A.dim * M.H.d
    m = product_map(sigma)
    nab, nu = nabla_map(M), preunit(M)
    lhs = (_associative(m, n) and _is_preunit(m, nu, n)
           and C(nab, m) == m and C(m, T(nab, nab)) == m)
    rhs = (twisted_check(sigma)["sigma_level"] and cocycle_check(sigma)["two_cocycle"]
           and normal_check(sigma))
    return lhs, rhs


@dataclass
class CrossedProductData:
    ctx: object
    sigma: Cochain
    psi: Mor
    sigmaHA: Mor
    nabla: Mor
    split: tuple
    nu: Mor
    mu_big: Mor
    mu_small: Mor
    unit_small: Mor
    rho: Mor
    beta_nu: Mor
    checks: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.mu_small.cod

    def to_json(self):
        return {
            "conditions": {k: self.checks[k] for k in ("twisted", "cocycle", "normal")},
            "dims": {"AtensorH": self.nabla.dom, "AtimesH": self.dim},
            "tables": {"mu_small": self.mu_small.mat.to_json(), "unit_small": self.unit_small.mat.to_json(),
                       "rho": self.rho.mat.to_json()},
        }


def _require(label, ok):
    if not ok:
        raise ConditionFailed(label)


def _preunits(M, s, psi, nab):
    """All nu' : K -> A (x) H satisfying the three linear preunit equations."""
    H, A, IH, IA = _parts(M)
    F = M.field
    n = A.dim * H.d
    muA_H = T(A.mu, IH)
    target1 = C(nab, T(A.eta, IH)).array
    # each equation is linear in nu'; build its matrix column by column
    cols1, cols2, cols3 = [], [], []
    for k in range(n):
        e = F.zeros(n, 1)
        e[k, 0] = F.scalar(1)
        v = Mor.dense(F, e)
        cols1.append(C(muA_H, T(IA, s), T(psi, IH), T(IH, v)).array.reshape(-1))
        cols2.append(C(muA_H, T(IA, s), T(v, IH)).array.reshape(-1))
        beta = C(muA_H, T(IA, v))
        cols3.append(F.sub(C(muA_H, T(IA, psi), T(v, IA)).array, beta.array).reshape(-1))
    system = np.concatenate([np.stack(c, axis=1) for c in (cols1, cols2, cols3)], axis=0)
    rhs = np.concatenate([target1.reshape(-1), target1.reshape(-1), F.zeros(cols3[0].size, 1).reshape(-1)])
    return solve_affine(Matrix(F, system), Matrix(F, rhs.reshape(-1, 1)))


def build_crossed_product(sigma):
    """A x_sigma H with every structural identity verified."""
    _degree2(sigma)
    M = sigma.ctx
    _require_cocommutative(M)
    sigma = regular(sigma)
    H, A, IH, IA = _parts(M)
    checks = {"twisted": twisted_check(sigma)["sigma_level"], "cocycle": cocycle_check(sigma)["two_cocycle"],
              "normal": normal_check(sigma)}
    for label, ok in checks.items():
        _require(label, ok)
    psi, s, nab = psi_map(M), sigma_lift(sigma), nabla_map(M)
    muA_H = T(A.mu, IH)
    n = A.dim * H.d
    In = ident(n, M.field)
    m = product_map(sigma)
    nu = preunit(M)
    lhs_unit = C(nab, T(A.eta, IH))
    _require("pre1", C(muA_H, T(IA, s), T(psi, IH), T(IH, nu)) == lhs_unit)
    _require("pre2", C(muA_H, T(IA, s), T(nu, IH)) == lhs_unit)
    beta = Mor.dense(M.field, C(muA_H, T(IA, nu)).array)
    _require("pre3", C(muA_H, T(IA, psi), T(nu, IA)) == beta)
    _require("sigma-preunit", C(s, T(H.eta, IH)) == lhs_unit and C(s, T(IH, H.eta)) == lhs_unit)
    _require("nabla-nu", C(nab, nu) == nu)
    _require("associative", _associative(m, n))
    _require("preunit", _is_preunit(m, nu, n))
    _require("normalized", C(nab, m) == m and C(m, T(nab, nab)) == m)
    _require("otra-prop", C(m, T(nab, IA, IH)) == m)
    _require("vieja-proof", C(m, T(IA, IH, nab)) == m)
    _require("left-A-linear", C(m, T(A.mu, IH, IA, IH)) == C(muA_H, T(IA, m)))
    _require("nabla-from-preunit", C(m, T(In, nu)) == nab)
    _require("beta-multiplicative", C(m, T(beta, beta)) == C(beta, A.mu))
    _require("beta-unit", C(beta, A.eta) == nu)
    x, null = _preunits(M, s, psi, nab)
    _require("preunit-unique", x is not None and not null and Mor.from_matrix(x) == nu)
    i, p = nabla_split(M)
    r = i.dom
    Ir = ident(r, M.field)
    mu_small = Mor.dense(M.field, C(p, m, T(i, i)).array)
    unit_small = Mor.dense(M.field, C(p, nu).array)
    _require("small-associative", C(mu_small, T(mu_small, Ir)) == C(mu_small, T(Ir, mu_small)))
    _require("small-unit", C(mu_small, T(unit_small, Ir)) == Ir and C(mu_small, T(Ir, unit_small)) == Ir)
    bbar = C(p, beta)
    _require("beta-bar-algebra-map", C(mu_small, T(bbar, bbar)) == C(bbar, A.mu) and C(bbar, A.eta) == unit_small)
    rho = Mor.dense(M.field, C(T(p, IH), T(IA, H.delta), i).array)
    cp = CrossedProductData(M, sigma, psi, s, nab, (i, p), nu, m, mu_small, unit_small, rho, beta, checks)
    _require("comodule-algebra", comodule_check(cp).valid)
    return cp


def comodule_report(cp, rho=None):
    """Comodule axioms, the comodule-algebra identity and (d1)-(d6) for a coaction on A x H."""
    rho = cp.rho if rho is None else rho
    H = cp.ctx.H
    F = cp.ctx.field
    mB, eB = cp.mu_small, cp.unit_small
    r = eB.cod
    IB, IH = ident(r, F), H.id()
    reta = C(rho, eB)
    cHB = swap(H.d, r, F)
    out = {}
    out["counit"] = C(T(IB, H.eps), rho) == IB
    out["coassoc"] = C(T(rho, IH), rho) == C(T(IB, H.delta), rho)
    out["comod-alg"] = C(T(mB, H.mu), T(IB, cHB, IH), T(rho, rho)) == C(rho, mB)
    twice = C(T(rho, IH), reta)
    dd = H.delta_eta
    out["d1"] = twice == C(T(IB, C(H.mu, H.c), IH), T(reta, dd))
    out["d2"] = twice == C(T(IB, H.mu, IH), T(reta, dd))
    out["d3"] = C(T(IB, H.pibarR), rho) == C(T(mB, IH), T(IB, reta))
    out["d4"] = C(T(IB, H.piL), rho) == C(T(C(mB, swap(r, r, F)), IH), T(IB, reta))
    out["d5"] = C(T(IB, H.pibarR), reta) == reta
    out["d6"] = C(T(IB, H.piL), reta) == reta
    return AxiomReport(out)


def comodule_check(cp, rho=None):
    """Report whose `valid` is the right H-comodule algebra flag.

    When the coaction is a comodule algebra map, (d1)-(d6) are equivalent and
    are checked to agree.
    """
    rep = comodule_report(cp, rho)
    res = rep.results
    if res["counit"] and res["coassoc"] and res["comod-alg"]:
        ds = {res[f"d{k}"] for k in range(1, 7)}
        if len(ds) != 1:
            raise ConditionFailed("d1-d6", "the equivalent comodule algebra conditions disagree")
    return rep


def broken_coaction(cp):
    """(p (x) H) o (A (x) delta o lambda) o i: a negative control for comodule_check."""
    H = cp.ctx.H
    i, p = cp.split
    return C(T(p, H.id()), T(cp.ctx.A.I, C(H.delta, H.lam)), i)


# textual forms

PSI_TEXT = "(phi * id[H]) o (id[H] * c[H,A]) o (delta * id[A])"
SIGMA_TEXT = "(sigma * mu) o (id[H] * c[H,H] * id[H]) o (delta * delta)"
NABLA_TEXT = "((mu_A o (id[A] * (phi o (id[H] * eta_A)))) * id[H]) o (id[A] * delta)"
NABLA_PSI_TEXT = f"(mu_A * id[H]) o (id[A] * ({PSI_TEXT})) o (id[A,H] * eta_A)"
MU_TEXT = f"(mu_A * id[H]) o (mu_A * ({SIGMA_TEXT})) o (id[A] * ({PSI_TEXT}) * id[H])"

DSL_FORMS = {"psi": PSI_TEXT, "sigmaHA": SIGMA_TEXT, "nabla": NABLA_TEXT, "nabla-psi": NABLA_PSI_TEXT,
             "mu_big": MU_TEXT}


def context_env(M, sigma=None):
    """DSL environment with objects H, A and the structure maps of M (and sigma)."""
    H, A = M.H, M.A
    gens = {"eta": H.eta, "mu": H.mu, "eps": H.eps, "delta": H.delta, "lambda": H.lam,
            "eta_A": A.eta, "mu_A": A.mu, "phi": M.phi}
    if sigma is not None:
        gens["sigma"] = sigma.mor
    return Env(M.field, {"H": H.d, "A": A.dim}, gens)


def eval_form(name, M, sigma=None):
    return eval_text(DSL_FORMS[name], context_env(M, sigma))


__all__ = [
    "CrossedProductData", "DSL_FORMS", "broken_coaction", "build_crossed_product", "cocycle_check",
    "comodule_check", "comodule_report", "context_env", "corollary_check", "eval_form", "nabla_map",
    "nabla_split", "normal_check", "preunit", "product_map", "psi_identities", "psi_map", "sigma_identities",
    "sigma_lift", "twisted_check", "twisted_consequences",
]
