"""Standard small examples: groupoids, algebras and actions."""
from __future__ import annotations

import numpy as np

from .hopf import build_groupoid, groupoid_algebra
from .linalg import FieldSpec
from .modalg import Algebra, ModuleAlgebra
from .moncat import Mor, tensor as T


# groupoids

def trivial_group():
    return build_groupoid(["*"], [("e", "*", "*")], {"e": "e"})


def cyclic_group(n):
    names = [f"g{i}" for i in range(n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    inv = {names[i]: names[-i % n] for i in range(n)}
    return build_groupoid(["*"], [(a, "*", "*") for a in names], inv, {"*": "g0"}, table)


def discrete_groupoid(k=2):
    objs = [f"x{i}" for i in range(k)]
    return build_groupoid(objs, [(f"id_{x}", x, x) for x in objs], {f"id_{x}": f"id_{x}" for x in objs})


def indiscrete_groupoid():
    """Two objects, exactly one arrow between any ordered pair."""
    arrows = [("id_x", "x", "x"), ("id_y", "y", "y"), ("g", "x", "y"), ("h", "y", "x")]
    return build_groupoid(["x", "y"], arrows, {"id_x": "id_x", "id_y": "id_y", "g": "h", "h": "g"})


def group_bundle():
    """Two objects, each carrying a copy of Z/2."""
    arrows = [("id_x", "x", "x"), ("a_x", "x", "x"), ("id_y", "y", "y"), ("a_y", "y", "y")]
    inv = {a: a for a, _, _ in arrows}
    return build_groupoid(["x", "y"], arrows, inv, {"x": "id_x", "y": "id_y"})


# algebras

def _algebra(field, dim, unit, products, name):
    """products maps (i, j) -> {k: coeff} on a basis."""
    eta = field.zeros(dim, 1)
    for k, v in unit.items():
        eta[k, 0] = field.scalar(v)
    mu = field.zeros(dim, dim * dim)
    for (i, j), out in products.items():
        for k, v in out.items():
            mu[k, i * dim + j] = field.scalar(v)
    return Algebra(field, dim, Mor.dense(field, eta), Mor.dense(field, mu), name)


def base_field(field):
    return _algebra(field, 1, {0: 1}, {(0, 0): {0: 1}}, "k")


def functions_on_objects(g, field):
    """k^Ob(G): orthogonal idempotents e_x, one per object."""
    n = len(g.objects)
    return _algebra(field, n, {i: 1 for i in range(n)}, {(i, i): {i: 1} for i in range(n)}, "k^Ob")


def dual_numbers(field):
    """k[t]/(t^2) on the basis 1, t."""
    return _algebra(field, 2, {0: 1}, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, "k[t]/t^2")


def upper_triangular(field):
    """2x2 upper triangular matrices on the basis E11, E12, E22 (noncommutative)."""
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return _algebra(field, 3, {0: 1, 2: 1}, prods, "T2")


_UT_BASIS = [np.array([[1, 0], [0, 0]]), np.array([[0, 1], [0, 0]]), np.array([[0, 0], [0, 1]])]


def _ut_coords(m):
    return [m[0, 0], m[0, 1], m[1, 1]]


# actions

def trivial_action(H, A):
    """phi = eps (x) id_A."""
    return T(H.eps, A.I)


def translation_action(H, A):
    """phi(sigma (x) e_x) = [s(sigma) = x] e_{t(sigma)} on functions on objects."""
    g = H.groupoid
    f = H.field
    objs = list(g.objects)
    n = len(objs)
    phi = f.zeros(n, H.d * n)
    for i, a in enumerate(g.names):
        phi[objs.index(g.tgt(a)), i * n + objs.index(g.src(a))] = f.scalar(1)
    return Mor.dense(f, phi)


def conjugation_action(H, A, images):
    """Group algebra acting on T2 by conjugation; images[a] is an invertible 2x2 integer matrix.

    Entries are reduced in the field of H, so the inverse is computed there.
    """
    f = H.field
    phi = f.zeros(A.dim, H.d * A.dim)
    for i, a in enumerate(H.groupoid.names):
        u = np.array(images[a], dtype=object)
        det = f.scalar(u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0])
        dinv = f.inv(det)
        uinv = np.array([[u[1, 1], -u[0, 1]], [-u[1, 0], u[0, 0]]], dtype=object) * dinv
        for j, e in enumerate(_UT_BASIS):
            img = u.dot(e.astype(object)).dot(uinv)
            if img[1, 0] and f.scalar(img[1, 0]) != 0:
                raise ValueError("conjugation leaves the upper triangular algebra")
            for k, v in enumerate(_ut_coords(img)):
                phi[k, i * A.dim + j] = f.scalar(v)
    return Mor.dense(f, phi)


# ready-made module algebras

def group_trivial(n, p):
    f = FieldSpec.fp(p) if p else FieldSpec.q()
    H = groupoid_algebra(cyclic_group(n) if n > 1 else trivial_group(), f)
    A = base_field(f)
    return ModuleAlgebra(H, A, trivial_action(H, A), f"k[Z/{n}] on k, {f}")


def groupoid_translation(g, field, name=""):
    H = groupoid_algebra(g, field)
    A = functions_on_objects(g, field)
    return ModuleAlgebra(H, A, translation_action(H, A), name or f"translation, {field}")


def dual_numbers_trivial(n, field):
    H = groupoid_algebra(cyclic_group(n), field)
    A = dual_numbers(field)
    return ModuleAlgebra(H, A, trivial_action(H, A), f"k[Z/{n}] on k[t]/t^2, {field}")


def upper_triangular_trivial(field):
    H = groupoid_algebra(cyclic_group(2), field)
    A = upper_triangular(field)
    return ModuleAlgebra(H, A, trivial_action(H, A), f"k[Z/2] on T2 trivially, {field}")


def upper_triangular_conjugation(field):
    """Z/2 acting on T2 by conjugation with [[1, 1], [0, 1]] (needs characteristic 2)."""
    H = groupoid_algebra(cyclic_group(2), field)
    A = upper_triangular(field)
    phi = conjugation_action(H, A, {"g0": [[1, 0], [0, 1]], "g1": [[1, 1], [0, 1]]})
    return ModuleAlgebra(H, A, phi, f"k[Z/2] on T2 by conjugation, {field}")


def standard_contexts():
    """Name -> zero-argument constructor for the shipped examples."""
    F2, F3, Q = FieldSpec.fp(2), FieldSpec.fp(3), FieldSpec.q()
    return {
        "trivial-group-F3": lambda: group_trivial(1, 3),
        "z2-F2-trivial": lambda: group_trivial(2, 2),
        "z2-F3-trivial": lambda: group_trivial(2, 3),
        "z3-F2-trivial": lambda: group_trivial(3, 2),
        "z2-Q-trivial": lambda: group_trivial(2, 0),
        "z2-F3-dual-numbers": lambda: dual_numbers_trivial(2, F3),
        "z2-F2-dual-numbers": lambda: dual_numbers_trivial(2, F2),
        "discrete2-F3-translation": lambda: groupoid_translation(discrete_groupoid(2), F3, "discrete2-F3-translation"),
        "discrete2-F2-translation": lambda: groupoid_translation(discrete_groupoid(2), F2, "discrete2-F2-translation"),
        "indiscrete2-F3-translation": lambda: groupoid_translation(indiscrete_groupoid(), F3, "indiscrete2-F3-translation"),
        "indiscrete2-F2-translation": lambda: groupoid_translation(indiscrete_groupoid(), F2, "indiscrete2-F2-translation"),
        "indiscrete2-Q-translation": lambda: groupoid_translation(indiscrete_groupoid(), Q, "indiscrete2-Q-translation"),
        "bundle-F3-translation": lambda: groupoid_translation(group_bundle(), F3, "bundle-F3-translation"),
        "t2-F2-trivial": lambda: upper_triangular_trivial(F2),
        "t2-F2-conjugation": lambda: upper_triangular_conjugation(F2),
    }
