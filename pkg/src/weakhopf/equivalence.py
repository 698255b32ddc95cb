"""Gauge transformations and the classification of weak crossed products.

A degree-1 cochain f gives the left A-linear, right H-colinear map

    Gamma_f = ((mu_A o (A (x) f)) (x) H) o (A (x) delta_H)

and f is recovered as (A (x) eps) o Gamma o (eta_A (x) H).  Two crossed
products A (x)_alpha H and A (x)_beta H are equivalent exactly when some
normalized regular f links alpha to beta.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (
    Cochain, coboundary, coface, cohomology_h2, convolution, enumerate_reg_plus, inverse, is_normalized,
    regular, same_class,
)
from .crossed import cocycle_check, nabla_map, normal_check, psi_map, sigma_lift, twisted_check
from .errors import ConditionFailed, DegreeMismatch, NotNormalized
from .moncat import Mor, compose as C, ident, tensor as T


def gamma_map(M, f):
    """Gamma_f for a map f: H -> A."""
    A, H = M.A, M.H
    return Mor.dense(M.field, C(T(C(A.mu, T(A.I, f)), H.id()), T(A.I, H.delta)).array)


def f_of_gamma(M, gamma):
    return C(T(M.A.I, M.H.eps), gamma, T(M.A.eta, M.H.id()))


def e_conditions(M, g, g2):
    """(e1)-(e3) for a pair of endomorphisms of A (x) H."""
    nab = nabla_map(M)
    return {
        "e1": C(g, g2) == nab and C(g2, g) == nab,
        "e2": C(g, g2, g) == g,
        "e3": C(g2, g, g2) == g2,
    }


def is_left_A_linear(M, gamma):
    muA_H = T(M.A.mu, M.H.id())
    return C(gamma, muA_H) == C(muA_H, T(M.A.I, gamma))


def is_right_H_colinear(M, gamma):
    rho = T(M.A.I, M.H.delta)
    return C(rho, gamma) == C(T(gamma, M.H.id()), rho)


@dataclass
class Gauge:
    f: Cochain
    gamma: Mor
    gamma_inv: Mor

    def to_json(self):
        return {"f": self.f.to_json(), "gamma": self.gamma.mat.to_json()}


def gamma_of(f, normalized=True):
    """The gauge of a regular (by default also normalized) degree-1 cochain."""
    if f.degree != 1:
        raise DegreeMismatch("gauges come from degree 1 cochains")
    f = regular(f)
    if normalized and not is_normalized(f):
        raise NotNormalized("f o eta_H != eta_A")
    M = f.ctx
    g, g2 = gamma_map(M, f.mor), gamma_map(M, f.inv)
    for label, ok in e_conditions(M, g, g2).items():
        if not ok:
            raise ConditionFailed(label)
    if f_of_gamma(M, g) != f.mor:
        raise ConditionFailed("f-gamma-roundtrip")
    if gamma_map(M, f_of_gamma(M, g)) != g:
        raise ConditionFailed("gamma-f-roundtrip")
    if not (is_left_A_linear(M, g) and is_right_H_colinear(M, g)):
        raise ConditionFailed("gamma-module-comodule")
    return Gauge(f, g, g2)


# the linking equations

def psi_crossed(M, f):
    A, H = M.A, M.H
    return C(A.mu, T(A.I, f), psi_map(M)) == C(A.mu, T(f, M.phi), T(H.delta, A.I))


def _spread(M, f):
    return C(T(f, M.H.id()), M.H.delta)


def sigma_crossed(f, alpha, beta):
    """mu_A o (A (x) f) o sigma_alpha = mu_A o (mu_A (x) beta) o (A (x) psi (x) H) o (f-spread (x) f-spread)."""
    M = alpha.ctx
    A, H = M.A, M.H
    sa = sigma_lift(alpha)
    lhs = C(A.mu, T(A.I, f), sa)
    sp = _spread(M, f)
    rhs = C(A.mu, T(A.mu, beta.mor), T(A.I, psi_map(M), H.id()), T(sp, sp))
    return lhs == rhs


def sigma_crossed_2(f, alpha, beta):
    M = alpha.ctx
    A, H = M.A, M.H
    lhs = C(A.mu, T(A.I, f), sigma_lift(alpha))
    inner = C(A.mu, T(C(M.phi, T(H.id(), f)), f), T(H.id(), H.c), T(H.delta, H.id()))
    rhs = C(A.mu, T(inner, beta.mor), H.delta_power(2))
    return lhs == rhs


def cohomologous(f, alpha, beta):
    """alpha ^ d_1 f = d_0 f ^ d_2 f ^ beta."""
    left = convolution(alpha, coface(1, 1, f))
    right = convolution(convolution(coface(1, 0, f), coface(1, 2, f)), beta)
    return left.mor == right.mor


def new_equ(gauge, alpha, beta):
    """Gamma o psi and Gamma o sigma_alpha in terms of f, psi and sigma_beta."""
    M = alpha.ctx
    A, H = M.A, M.H
    g, f = gauge.gamma, gauge.f.mor
    psi = psi_map(M)
    muA_H = T(A.mu, H.id())
    sp = _spread(M, f)
    return {
        "new-equ-1": C(g, psi) == C(muA_H, T(f, psi), T(H.delta, A.I)),
        "new-equ-2": C(g, sigma_lift(alpha)) == C(muA_H, T(A.mu, sigma_lift(beta)), T(A.I, psi, H.id()), T(sp, sp)),
    }


def _require_cocycle(sigma):
    sigma = regular(sigma)
    if not normal_check(sigma):
        raise ConditionFailed("normal")
    if not twisted_check(sigma)["sigma_level"]:
        raise ConditionFailed("twisted")
    if not cocycle_check(sigma)["two_cocycle"]:
        raise ConditionFailed("cocycle")
    return sigma


def gauge_links(f, alpha, beta, check=True):
    """True when f realises an equivalence A (x)_alpha H ~ A (x)_beta H."""
    if check:
        alpha, beta = _require_cocycle(alpha), _require_cocycle(beta)
    M = alpha.ctx
    f = regular(f)
    pc = psi_crossed(M, f.mor)
    if M.A.commutative and not pc:
        raise ConditionFailed("psi-crossed-commutative", "psi-crossed fails with commutative A")
    coh = cohomologous(f, alpha, beta)
    if pc:
        sc, sc2 = sigma_crossed(f.mor, alpha, beta), sigma_crossed_2(f.mor, alpha, beta)
        if not sc == sc2 == coh:
            raise ConditionFailed("sigma-crossed-forms", f"{sc}, {sc2}, {coh}")
    return pc and coh


def inverse_links(gauge, alpha, beta):
    """The f^-1 versions, which hold whenever gauge links alpha to beta."""
    M = alpha.ctx
    finv = inverse(gauge.f)
    back = Gauge(finv, gauge.gamma_inv, gauge.gamma)
    eq = new_equ(back, beta, alpha)
    return {
        "psi-crossed-f-1": psi_crossed(M, finv.mor),
        "new-equ-1-f-1": eq["new-equ-1"],
        "sigma-crossed-f-1": sigma_crossed(finv.mor, beta, alpha),
        "new-equ-2-f-1": eq["new-equ-2"],
        "sigma-crossed-2-f-1": sigma_crossed_2(finv.mor, beta, alpha),
        "cohomologous-1-f-1": cohomologous(finv, beta, alpha),
    }


def _gauges(M, budget, prefilter):
    key = ("reg_plus_1", budget, prefilter)
    if key not in M._cache:
        M._cache[key] = enumerate_reg_plus(1, M, budget, prefilter)
    return M._cache[key]


def _coboundary_keys(M, budget, prefilter):
    key = ("d1_image", budget, prefilter)
    if key not in M._cache:
        M._cache[key] = {coboundary(1, f).key() for f in _gauges(M, budget, prefilter)}
    return M._cache[key]


def find_equivalence(alpha, beta, budget=10**6, prefilter=False):
    """A gauge linking alpha to beta, or None.  Exhaustive over normalized regular f."""
    alpha, beta = _require_cocycle(alpha), _require_cocycle(beta)
    M = alpha.ctx
    found = None
    for f in _gauges(M, budget, prefilter):
        if gauge_links(f, alpha, beta, check=False):
            found = gamma_of(f)
            break
    if M.A.commutative:
        other = convolution(alpha, inverse(beta)).key() in _coboundary_keys(M, budget, prefilter)
        if other != (found is not None):
            raise ConditionFailed("coboundary-oracle", f"gauge search {found is not None}, coboundary test {other}")
    return found


def _action(cp):
    """Left A-module structure of A x H: p o (mu_A (x) H) o (A (x) i)."""
    M = cp.ctx
    i, p = cp.split
    return C(p, T(M.A.mu, M.H.id()), T(M.A.I, i))


def build_isomorphism(cp_a, cp_b, gauge):
    """omega = p o Gamma_f o i : A x_alpha H -> A x_beta H, with every property checked."""
    M = cp_a.ctx
    g = gauge.gamma
    nab = nabla_map(M)
    i, p = cp_a.split
    if C(g, cp_a.nu) != cp_b.nu:
        raise ConditionFailed("preunit", "Gamma o nu != nu")
    if C(gauge.f.mor, M.H.eta) != M.A.eta:
        raise ConditionFailed("f-gamma-eta")
    if not (C(g, nab) == g and C(nab, g) == g):
        raise ConditionFailed("prin-condition")
    if C(p, g, cp_a.nu) != C(p, cp_b.nu):
        raise ConditionFailed("preunit-crossed")
    if not gauge_links(gauge.f, cp_a.sigma, cp_b.sigma, check=False):
        raise ConditionFailed("links")
    if C(g, cp_a.mu_big) != C(cp_b.mu_big, T(g, g)):
        raise ConditionFailed("multiplicative")
    if C(g, T(M.A.I, M.H.eta)) != C(nab, T(M.A.I, M.H.eta)):
        raise ConditionFailed("gamma-eta")
    omega = Mor.dense(M.field, C(p, g, i).array)
    back = C(p, gauge.gamma_inv, i)
    r = omega.dom
    Ir = ident(r, M.field)
    if C(back, omega) != Ir or C(omega, back) != Ir:
        raise ConditionFailed("inverse")
    if C(cp_b.mu_small, T(omega, omega)) != C(omega, cp_a.mu_small):
        raise ConditionFailed("algebra-map")
    if C(omega, cp_a.unit_small) != cp_b.unit_small:
        raise ConditionFailed("unit")
    act = _action(cp_a)
    if C(omega, act) != C(act, T(M.A.I, omega)):
        raise ConditionFailed("A-linear")
    if C(cp_b.rho, omega) != C(T(omega, M.H.id()), cp_a.rho):
        raise ConditionFailed("colinear")
    return omega


@dataclass
class ClassificationReport:
    cocycle_count: int
    class_count: int
    h2_order: int
    bijection_ok: bool
    classes: list

    def to_json(self):
        return {"cocycle_count": self.cocycle_count, "class_count": self.class_count,
                "h2_order": self.h2_order, "bijection_ok": self.bijection_ok,
                "classes": [[s.mat.to_json() for s in cls] for cls in self.classes]}


def normalized_cocycles(M, budget=10**6, prefilter=False):
    out = []
    for s in enumerate_reg_plus(2, M, budget, prefilter):
        if twisted_check(s)["sigma_level"] and cocycle_check(s)["two_cocycle"]:
            out.append(s)
    return out


def classify(M, budget=10**6, prefilter=False):
    """Partition normalized 2-cocycles by equivalence of crossed products and compare with H^2."""
    cocycles = normalized_cocycles(M, budget, prefilter)
    classes = []
    for s in cocycles:  # already in lexicographic order, so classes[k][0] is the smallest member
        for cls in classes:
            if find_equivalence(cls[0], s, budget, prefilter) is not None:
                cls.append(s)
                break
        else:
            classes.append([s])
    h2 = cohomology_h2(M, budget, True, prefilter)
    ok = len(classes) == h2.order
    seen = set()
    for cls in classes:
        reps = [k for k, r in enumerate(h2.class_reps) if same_class(M, cls[0], r, h2.coboundaries)]
        if len(reps) != 1 or reps[0] in seen:
            ok = False
        seen.update(reps)
        if not all(same_class(M, cls[0], s, h2.coboundaries) for s in cls):
            ok = False
    return ClassificationReport(len(cocycles), len(classes), h2.order, ok, classes)
