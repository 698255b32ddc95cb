"""Weak Hopf algebras given by structure matrices, and groupoid algebras.

A `WeakHopf` holds eta, mu, eps, delta and the antipode lam as morphisms over
one field.  `validate_weak_hopf` checks the defining axioms; the
`*_identities` functions evaluate the standard consequences (target and
source maps, their barred versions, the Omega idempotents) and return a dict
of name -> bool so callers can assert or report them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidGroupoid, NotCocommutative, ValidationError
from .linalg import FieldSpec
from .moncat import Mor, compose as C, ident, swap, tensor as T


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)

    @property
    def valid(self):
        return all(self.results.values())

    @property
    def failures(self):
        return [k for k, v in self.results.items() if not v]

    def to_json(self):
        return {"valid": self.valid, "axioms": dict(self.results), "failures": self.failures}


# groupoids

@dataclass
class Groupoid:
    """Finite groupoid; compose[(a, b)] is the arrow a o b (b first)."""

    objects: list
    arrows: list  # (name, src, tgt)
    identities: dict
    compose: dict
    inverses: dict

    @property
    def names(self):
        return [a[0] for a in self.arrows]

    def src(self, a):
        return self._ends[a][0]

    def tgt(self, a):
        return self._ends[a][1]

    @cached_property
    def _ends(self):
        return {n: (s, t) for n, s, t in self.arrows}

    def composable(self, a, b):
        return self.src(a) == self.tgt(b)

    @classmethod
    def from_json(cls, obj):
        objects = list(obj["objects"])
        arrows = [(a["name"], a["src"], a["tgt"]) for a in obj["arrows"]]
        inverses = dict(obj.get("inverses", {}))
        table = {}
        for entry in obj.get("compose", []):
            table[(entry[0], entry[1])] = entry[2]
        return build_groupoid(objects, arrows, inverses, obj.get("identities"), table)

    def to_json(self):
        return {
            "objects": list(self.objects),
            "arrows": [{"name": n, "src": s, "tgt": t} for n, s, t in self.arrows],
            "identities": dict(self.identities),
            "inverses": dict(self.inverses),
            "compose": [[a, b, c] for (a, b), c in sorted(self.compose.items(), key=lambda kv: (self._pos(kv[0][0]), self._pos(kv[0][1])))],
        }

    def _pos(self, a):
        return self.names.index(a)

    def check(self):
        """Raise InvalidGroupoid unless all category and inverse laws hold."""
        ends = self._ends
        if len(ends) != len(self.arrows):
            raise InvalidGroupoid("duplicate arrow names")
        objs = set(self.objects)
        for n, s, t in self.arrows:
            if s not in objs or t not in objs:
                raise InvalidGroupoid(f"arrow {n} has an unknown endpoint")
        for x in self.objects:
            e = self.identities.get(x)
            if e not in ends or ends[e] != (x, x):
                raise InvalidGroupoid(f"no identity loop at {x}")
        for a, b in itertools.product(self.names, repeat=2):
            if self.composable(a, b):
                c = self.compose.get((a, b))
                if c is None or ends[c] != (self.src(b), self.tgt(a)):
                    raise InvalidGroupoid(f"bad composite {a} o {b}")
        for a in self.names:
            if self.compose[(self.identities[self.tgt(a)], a)] != a or self.compose[(a, self.identities[self.src(a)])] != a:
                raise InvalidGroupoid(f"identity law fails at {a}")
            inv = self.inverses.get(a)
            if inv not in ends or ends[inv] != (self.tgt(a), self.src(a)):
                raise InvalidGroupoid(f"bad inverse for {a}")
            if self.compose[(a, inv)] != self.identities[self.tgt(a)] or self.compose[(inv, a)] != self.identities[self.src(a)]:
                raise InvalidGroupoid(f"inverse law fails at {a}")
        if not _associative(self, self.compose):
            raise InvalidGroupoid("composition is not associative")


def _associative(g, table):
    for a, b, c in itertools.product(g.names, repeat=3):
        if g.composable(a, b) and g.composable(b, c):
            if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                return False
    return True


def build_groupoid(objects, arrows, inverses, identities=None, compose=None):
    """Assemble a groupoid, inferring identities and composites when forced.

    Composites not given explicitly are filled from the identity and inverse
    laws; any that remain are found by search over tables satisfying
    cancellation and associativity.  The search must have exactly one
    solution, otherwise the description is ambiguous and is rejected.
    """
    ends = {n: (s, t) for n, s, t in arrows}
    loops = {x: [n for n, s, t in arrows if s == t == x] for x in objects}
    if identities is None:
        choices = [[e for e in loops[x] if inverses.get(e) == e] for x in objects]
        id_options = [dict(zip(objects, pick)) for pick in itertools.product(*choices)]
    else:
        id_options = [dict(identities)]
    solutions = []
    for ids in id_options:
        for table in _complete_tables(objects, arrows, ends, inverses, ids, dict(compose or {})):
            solutions.append((ids, table))
            if len(solutions) > 1:
                raise InvalidGroupoid("composition is ambiguous; give identities and a compose table")
    if not solutions:
        raise InvalidGroupoid("no groupoid structure fits the description")
    ids, table = solutions[0]
    g = Groupoid(list(objects), list(arrows), ids, table, dict(inverses))
    g.check()
    return g


def _complete_tables(objects, arrows, ends, inverses, ids, table):
    names = [a[0] for a in arrows]
    if any(x not in ids for x in objects):
        return
    for a in names:
        s, t = ends[a]
        forced = [((ids[t], a), a), ((a, ids[s]), a)]
        if a in inverses:
            forced += [((a, inverses[a]), ids[t]), ((inverses[a], a), ids[s])]
        for key, val in forced:
            if table.setdefault(key, val) != val:
                return
    pairs = [(a, b) for a in names for b in names if ends[a][0] == ends[b][1] and (a, b) not in table]
    cands = {(a, b): [c for c in names if ends[c] == (ends[b][0], ends[a][1])] for a, b in pairs}

    def ok(tab):
        # left and right cancellation on the assigned entries
        seen = set()
        for (a, b), c in tab.items():
            for key in (("L", a, c), ("R", b, c)):
                if key in seen:
                    return False
                seen.add(key)
        return True

    if not ok(table):
        return

    def rec(k):
        if k == len(pairs):
            probe = Groupoid(list(objects), list(arrows), ids, table, dict(inverses))
            if _associative(probe, table):
                yield dict(table)
            return
        key = pairs[k]
        for c in cands[key]:
            table[key] = c
            if ok(table):
                yield from rec(k + 1)
            del table[key]

    yield from rec(0)


# weak Hopf algebras

class WeakHopf:
    def __init__(self, field, dim, eta, mu, eps, delta, lam, groupoid=None, name=""):
        self.field = field
        self.d = dim
        self.eta, self.mu, self.eps, self.delta, self.lam = eta, mu, eps, delta, lam
        self.groupoid = groupoid
        self.name = name
        shapes = {"eta": (eta, 1, dim), "mu": (mu, dim * dim, dim), "eps": (eps, dim, 1),
                  "delta": (delta, dim, dim * dim), "lambda": (lam, dim, dim)}
        for label, (m, dom, cod) in shapes.items():
            if m.field != field or (m.dom, m.cod) != (dom, cod):
                raise ValidationError([f"{label}-shape"])
        self._dpow = {}
        self._mpow = {}

    # shorthands

    def id(self, k=1):
        return ident(self.d ** k, self.field)

    @cached_property
    def c(self):
        return swap(self.d, self.d, self.field)

    @cached_property
    def eps_mu(self):
        return C(self.eps, self.mu)

    @cached_property
    def delta_eta(self):
        return C(self.delta, self.eta)

    def conv(self, f, g):
        """f ^ g = mu o (f (x) g) o delta for endomorphisms of H."""
        return C(self.mu, T(f, g), self.delta)

    # target and source maps

    @cached_property
    def piL(self):
        I = self.id()
        return C(T(self.eps_mu, I), T(I, self.c), T(self.delta_eta, I))

    @cached_property
    def piR(self):
        I = self.id()
        return C(T(I, self.eps_mu), T(self.c, I), T(I, self.delta_eta))

    @cached_property
    def pibarL(self):
        I = self.id()
        return C(T(I, self.eps_mu), T(self.delta_eta, I))

    @cached_property
    def pibarR(self):
        I = self.id()
        return C(T(self.eps_mu, I), T(I, self.delta_eta))

    @cached_property
    def cocommutative(self):
        return C(self.c, self.delta) == self.delta

    @cached_property
    def commutative(self):
        return C(self.mu, self.c) == self.mu

    def delta_power(self, n):
        """Coproduct of H^(x)n: delta_{D(x)E} = (D (x) c_{D,E} (x) E) o (delta_D (x) delta_E)."""
        if n not in self._dpow:
            if n == 0:
                out = ident(1, self.field)
            elif n == 1:
                out = self.delta
            else:
                prev = self.delta_power(n - 1)
                mid = swap(self.d ** (n - 1), self.d, self.field)
                out = C(T(self.id(n - 1), mid, self.id()), T(prev, self.delta))
            self._dpow[n] = out
        return self._dpow[n]

    def mult_power(self, n):
        """Iterated product m^n: H^(x)n -> H, with m^1 = id and m^0 = eta."""
        if n not in self._mpow:
            if n == 0:
                out = self.eta
            elif n == 1:
                out = self.id()
            else:
                out = C(self.mult_power(n - 1), T(self.id(n - 2), self.mu))
            self._mpow[n] = out
        return self._mpow[n]

    def omega(self, side="L"):
        dd = self.delta_power(2)
        I2 = self.id(2)
        if side == "L":
            return C(T(self.eps_mu, I2), dd)
        return C(T(I2, self.eps_mu), dd)

    # serialisation

    def to_json(self, raw=False):
        """Groupoid form when H came from a groupoid, unless raw structure matrices are asked for."""
        if self.groupoid is not None and not raw:
            return {"field": self.field.to_json(), "groupoid": self.groupoid.to_json()}
        return {"field": self.field.to_json(), "dim": self.d,
                **{k: getattr(self, a).mat.to_json() for k, a in
                   [("eta", "eta"), ("mu", "mu"), ("eps", "eps"), ("delta", "delta"), ("lambda", "lam")]}}

    def __repr__(self):
        return f"WeakHopf({self.name or 'H'}, dim={self.d}, {self.field})"


def groupoid_algebra(g, field):
    """The groupoid algebra k[G]: arrows as basis, sigma tau = sigma o tau when composable."""
    names = g.names
    n = len(names)
    pos = {a: i for i, a in enumerate(names)}
    one = field.scalar(1)
    mu = field.zeros(n, n * n)
    for a, b in itertools.product(names, repeat=2):
        if g.composable(a, b):
            mu[pos[g.compose[(a, b)]], pos[a] * n + pos[b]] = one
    eta = field.zeros(n, 1)
    for x in g.objects:
        eta[pos[g.identities[x]], 0] = one
    delta = field.zeros(n * n, n)
    for a in names:
        delta[pos[a] * n + pos[a], pos[a]] = one
    eps = field.zeros(1, n)
    eps[0, :] = one
    lam = field.zeros(n, n)
    for a in names:
        lam[pos[g.inverses[a]], pos[a]] = one
    m = lambda a: Mor.dense(field, a)
    H = WeakHopf(field, n, m(eta), m(mu), m(eps), m(delta), m(lam), groupoid=g)
    return H


def load_weak_hopf(obj, field=None):
    """From {"field", "groupoid"} or {"field", "dim", "eta", "mu", "eps", "delta", "lambda"}."""
    f = field or FieldSpec.from_json(obj["field"])
    if "groupoid" in obj:
        H = groupoid_algebra(Groupoid.from_json(obj["groupoid"]), f)
        H.name = obj.get("name", "")
        return H
    d = int(obj["dim"])
    shapes = {"eta": (1, d), "mu": (d * d, d), "eps": (d, 1), "delta": (d, d * d), "lambda": (d, d)}
    ms = {k: Mor.from_json({"dom": dom, "cod": cod, "mat": obj[k]}, field=f) for k, (dom, cod) in shapes.items()}
    return WeakHopf(f, d, ms["eta"], ms["mu"], ms["eps"], ms["delta"], ms["lambda"], name=obj.get("name", ""))


# axioms

def validate_weak_hopf(H):
    I, c = H.id(), H.c
    eta, mu, eps, delta, lam = H.eta, H.mu, H.eps, H.delta, H.lam
    r = {}
    r["assoc"] = C(mu, T(mu, I)) == C(mu, T(I, mu))
    r["unit"] = C(mu, T(eta, I)) == I and C(mu, T(I, eta)) == I
    r["coassoc"] = C(T(delta, I), delta) == C(T(I, delta), delta)
    r["counit"] = C(T(eps, I), delta) == I and C(T(I, eps), delta) == I
    r["a1"] = C(delta, mu) == C(T(mu, mu), H.delta_power(2))
    lhs = C(eps, mu, T(mu, I))
    ee_mm = C(T(eps, eps), T(mu, mu))
    r["a2"] = lhs == C(ee_mm, T(I, delta, I)) and lhs == C(ee_mm, T(I, C(c, delta), I))
    lhs = C(T(delta, I), delta, eta)
    dd_ee = C(T(delta, delta), T(eta, eta))
    r["a3"] = lhs == C(T(I, mu, I), dd_ee) and lhs == C(T(I, C(mu, c), I), dd_ee)
    r["a4-1"] = H.conv(I, lam) == H.piL
    r["a4-2"] = H.conv(lam, I) == H.piR
    r["a4-3"] = H.conv(H.conv(lam, I), lam) == lam
    return AxiomReport(r)


def weak_hopf_identities(H):
    """Standard consequences of the axioms for the target/source maps."""
    I, c = H.id(), H.c
    mu, delta, eps, eta, lam = H.mu, H.delta, H.eps, H.eta, H.lam
    pL, pR, bL, bR = H.piL, H.piR, H.pibarL, H.pibarR
    em, de = H.eps_mu, H.delta_eta
    r = {}
    r["antipode_antimultiplicative"] = C(lam, mu) == C(mu, T(lam, lam), c)
    r["antipode_anticomultiplicative"] = C(delta, lam) == C(c, T(lam, lam), delta)
    r["antipode_unit"] = C(lam, eta) == eta
    r["antipode_counit"] = C(eps, lam) == eps
    r["piL_is_id_conv_lambda"] = H.conv(I, lam) == pL
    r["piR_is_lambda_conv_id"] = H.conv(lam, I) == pR
    for name, p in (("piL", pL), ("piR", pR), ("pibarL", bL), ("pibarR", bR)):
        r[f"{name}_idempotent"] = C(p, p) == p
    r["piL_conv_idempotent"] = H.conv(pL, pL) == pL
    r["piR_conv_idempotent"] = H.conv(pR, pR) == pR
    r["piL_after_pibarL"] = C(pL, bL) == pL
    r["piL_after_pibarR"] = C(pL, bR) == bR
    r["piR_after_pibarL"] = C(pR, bL) == bL
    r["piR_after_pibarR"] = C(pR, bR) == pR
    r["pibarL_after_piL"] = C(bL, pL) == bL
    r["pibarL_after_piR"] = C(bL, pR) == pR
    r["pibarR_after_piL"] = C(bR, pL) == pL
    r["pibarR_after_piR"] = C(bR, pR) == bR
    r["piL_absorbs_right_factor"] = C(pL, mu, T(I, pL)) == C(pL, mu)
    r["piR_absorbs_left_factor"] = C(pR, mu, T(pR, I)) == C(pR, mu)
    r["coproduct_on_piL_image"] = C(T(I, pL), delta, pL) == C(delta, pL)
    r["coproduct_on_piR_image"] = C(T(pR, I), delta, pR) == C(delta, pR)
    r["mu_after_piL_right"] = C(mu, T(I, pL)) == C(T(em, I), T(I, c), T(delta, I))
    r["piL_right_after_delta"] = C(T(I, pL), delta) == C(T(mu, I), T(I, c), T(de, I))
    r["mu_after_piR_left"] = C(mu, T(pR, I)) == C(T(I, em), T(c, I), T(I, delta))
    r["piR_left_after_delta"] = C(T(pR, I), delta) == C(T(I, mu), T(c, I), T(I, de))
    r["mu_after_pibarR_left"] = C(mu, T(bR, I)) == C(T(em, I), T(I, delta))
    r["mu_after_pibarL_right"] = C(mu, T(I, bL)) == C(T(I, em), T(delta, I))
    r["pibarL_left_after_delta"] = C(T(bL, I), delta) == C(T(I, mu), T(de, I))
    r["pibarR_right_after_delta"] = C(T(I, bR), delta) == C(T(mu, I), T(I, de))
    if H.cocommutative:
        r["lambda_involutive"] = C(lam, lam) == I
    return r


def cocommutative_identities(H, ns=(2, 3), prod_ns=(3, 4), mult_ns=(2, 3, 4)):
    """Identities that hold when delta is cocommutative."""
    if not H.cocommutative:
        raise NotCocommutative("these identities need a cocommutative coproduct")
    I, mu, delta = H.id(), H.mu, H.delta
    pis = {"L": H.piL, "R": H.piR}
    Hk = H.id
    r = {}
    for s, p in pis.items():
        r[f"pi{s}_equals_pibar{s}"] = p == (H.pibarL if s == "L" else H.pibarR)
        r[f"pi{s}_coproduct_split"] = C(delta, p) == C(T(p, p), delta)
        for t, q in pis.items():
            target = C(delta, q)
            r[f"pi{s}_left_absorbed_on_pi{t}_image"] = C(T(p, I), delta, q) == target
            r[f"pi{s}_right_absorbed_on_pi{t}_image"] = C(T(I, p), delta, q) == target
    r["piL_coproduct_of_product"] = C(T(H.piL, I), delta, mu) == C(T(H.piL, mu), T(delta, I))
    r["piR_coproduct_of_product"] = C(T(I, H.piR), delta, mu) == C(T(mu, H.piR), T(I, delta))
    r["power_coproduct_coassoc"] = C(H.delta_power(2), delta) == C(T(delta, delta), delta)
    gens = {"delta": None}
    for s, p in pis.items():
        gens[f"pi{s}"] = p
        gens[f"pi{s}_left_coaction"] = C(T(p, I), delta)
        gens[f"pi{s}_right_coaction"] = C(T(I, p), delta)
    for n in ns:
        dn = H.delta_power(n)
        for i in range(n):
            r[f"delta_power_insert_delta_n{n}_i{i}"] = (
                C(H.delta_power(n + 1), T(Hk(i), delta, Hk(n - i - 1)))
                == C(T(Hk(i), delta, Hk(n - 1), delta, Hk(n - i - 1)), dn))
            for name, g in gens.items():
                if g is None:
                    continue
                k = 0 if g.cod == H.d else 1  # pi itself keeps degree n
                r[f"delta_power_insert_{name}_n{n}_i{i}"] = (
                    C(H.delta_power(n + k), T(Hk(i), g, Hk(n - i - 1)))
                    == C(T(Hk(i), g, Hk(n - 1), g, Hk(n - i - 1)), dn))
    for n in prod_ns:
        for i in range(1, n):
            m = T(Hk(i - 1), mu, Hk(n - i - 1))
            r[f"product_insert_n{n}_i{i}"] = C(T(m, m), H.delta_power(n)) == C(H.delta_power(n - 1), m)
    for n in mult_ns:
        mn = H.mult_power(n)
        r[f"iterated_product_comultiplicative_n{n}"] = C(delta, mn) == C(T(mn, mn), H.delta_power(n))
        if n >= 3:
            r[f"iterated_product_bracketings_n{n}"] = mn == C(H.mult_power(n - 1), T(mu, Hk(n - 2)))
    return r


def omega2(H):
    """The idempotent Omega: H (x) H -> H (x) H (left version; equal to the right one when cocommutative)."""
    oL, oR = H.omega("L"), H.omega("R")
    if C(oL, oL) != oL or C(oR, oR) != oR:
        raise ValidationError(["omega-idempotent"])
    if H.cocommutative and oL != oR:
        raise NotCocommutative("left and right Omega differ")
    return oL


def omega_identities(H):
    I, I2, mu, delta = H.id(), H.id(2), H.mu, H.delta
    oL, oR = H.omega("L"), H.omega("R")
    dd = H.delta_power(2)
    r = {}
    r["omegaL_idempotent"] = C(oL, oL) == oL
    r["omegaR_idempotent"] = C(oR, oR) == oR
    r["omegaL_second_form"] = oL == C(T(C(mu, T(I, H.piL)), I), T(I, delta))
    r["mu_absorbs_omegaL"] = C(mu, oL) == mu
    r["mu_absorbs_omegaR"] = C(mu, oR) == mu
    r["omegaL_left_module_map"] = C(oL, T(mu, I)) == C(T(mu, I), T(I, oL))
    r["omegaL_right_module_map"] = C(oL, T(I, mu)) == C(T(I, mu), T(oL, I))
    r["omegaL_right_comodule_map"] = C(T(I, delta), oL) == C(T(oL, I), T(I, delta))
    r["omegaR_left_comodule_map"] = C(T(delta, I), oR) == C(T(I, oR), T(delta, I))
    if H.cocommutative:
        r["omegaL_equals_omegaR"] = oL == oR
        lhs = C(dd, oL)
        r["omega_coproduct_right"] = lhs == C(T(I2, oL), dd)
        r["omega_coproduct_left"] = lhs == C(T(oL, I2), dd)
        r["omega_coproduct_split"] = lhs == C(T(oL, oL), dd)
    return r


__all__ = [
    "AxiomReport", "Groupoid", "WeakHopf", "build_groupoid", "groupoid_algebra", "load_weak_hopf",
    "validate_weak_hopf", "weak_hopf_identities", "cocommutative_identities", "omega2", "omega_identities",
]
