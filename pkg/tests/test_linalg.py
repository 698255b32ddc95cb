from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakhopf.errors import DimensionMismatch, FieldMismatch, NotIdempotent, WeakHopfError
from weakhopf.linalg import FieldSpec, Matrix, nullspace, solve_affine, split_idempotent

F2, F3, F5, Q = FieldSpec.fp(2), FieldSpec.fp(3), FieldSpec.fp(5), FieldSpec.q()
FIELDS = [F2, F3, F5, Q]


def col(field, xs):
    return Matrix(field, [[x] for x in xs])


# FieldSpec

def test_field_parse_and_json():
    assert FieldSpec.parse("Q") == Q
    assert FieldSpec.parse("Fp:3") == F3
    assert FieldSpec.parse("F5") == F5
    assert FieldSpec.from_json({"kind": "Fp", "p": 3}) == F3
    assert Q.to_json() == {"kind": "Q"}
    assert F3.to_json() == {"kind": "Fp", "p": 3}


@pytest.mark.parametrize("bad", ["Fp:4", "Fp:1", "R", "Fp:x"])
def test_field_parse_rejects(bad):
    with pytest.raises(WeakHopfError):
        FieldSpec.parse(bad)


def test_scalars_are_canonical():
    assert Q.scalar("6/4") == Fraction(3, 2)
    assert type(Q.scalar("4/2")) is int
    assert F3.scalar(-1) == 2
    assert F5.scalar(Fraction(1, 2)) == 3
    with pytest.raises(WeakHopfError):
        F3.scalar(Fraction(1, 3))


def test_matrix_json_round_trip():
    m = Matrix(Q, [[Fraction(3, 2), -1], [0, Fraction(2, 4)]])
    assert m.to_json() == [["3/2", "-1"], ["0", "1/2"]]
    assert Matrix.from_json(Q, m.to_json()) == m
    assert Matrix(F3, [[4, -1]]).to_json() == [["1", "2"]]


def test_matrix_is_immutable():
    m = Matrix(F3, [[1]])
    with pytest.raises(AttributeError):
        m.a = None
    with pytest.raises(ValueError):
        m.a[0, 0] = 2


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Matrix(F2, [[1]]) @ Matrix(F3, [[1]])


# solve_affine

def test_solve_identity():
    x, null = solve_affine(Matrix(Q, [[1]]), col(Q, [1]))
    assert x == col(Q, [1]) and null == []


def test_solve_inconsistent():
    x, _ = solve_affine(Matrix(Q, [[0]]), col(Q, [1]))
    assert x is None


def test_solve_f2_example():
    m, b = Matrix(F2, [[1, 1], [0, 0]]), col(F2, [1, 0])
    x, null = solve_affine(m, b)
    assert x == col(F2, [1, 0])
    assert null == [col(F2, [1, 1])]
    # exhaustive substitution over all of F2^2
    sols = {v for v in product(range(2), repeat=2) if m @ col(F2, v) == b}
    affine = {tuple(int(t) for t in (x + Matrix(F2, c * null[0].a)).a.ravel()) for c in range(2)}
    assert sols == affine == {(1, 0), (0, 1)}


def test_solve_errors():
    with pytest.raises(DimensionMismatch):
        solve_affine(Matrix(Q, [[1, 2]]), col(Q, [1, 2]))
    with pytest.raises(FieldMismatch):
        solve_affine(Matrix(Q, [[1]]), col(F3, [1]))


@st.composite
def systems(draw):
    field = draw(st.sampled_from(FIELDS))
    rows, cols = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    lo, hi = (-3, 3) if field.is_q else (0, field.p - 1)
    ent = st.integers(lo, hi)
    m = Matrix(field, [[draw(ent) for _ in range(cols)] for _ in range(rows)])
    b = Matrix(field, [[draw(ent)] for _ in range(rows)])
    return m, b


@settings(max_examples=150, deadline=None)
@given(systems())
def test_solve_affine_contract(mb):
    m, b = mb
    x, null = solve_affine(m, b)
    zero = Matrix.zeros(m.field, m.rows, 1)
    for v in null:
        assert m @ v == zero
    assert len(null) == m.cols - m.rank()
    if x is not None:
        assert m @ x == b
    else:
        # inconsistent exactly when the augmented rank grows
        aug = Matrix(m.field, np.concatenate([m.a, b.a], axis=1))
        assert aug.rank() == m.rank() + 1


# split_idempotent

def test_split_identity():
    i, p = split_idempotent(Matrix.identity(Q, 3))
    assert i == p == Matrix.identity(Q, 3)


def test_split_zero():
    i, p = split_idempotent(Matrix.zeros(F3, 2, 2))
    assert i.shape == (2, 0) and p.shape == (0, 2)
    assert i @ p == Matrix.zeros(F3, 2, 2)


def test_split_f2_example():
    q = Matrix(F2, [[1, 1], [0, 0]])
    i, p = split_idempotent(q)
    assert i.tolist() == [[1], [0]] and p.tolist() == [[1, 1]]
    assert i @ p == q and p @ i == Matrix.identity(F2, 1)


def test_split_rejects_non_idempotent():
    with pytest.raises(NotIdempotent):
        split_idempotent(Matrix(Q, [[2]]))
    with pytest.raises(DimensionMismatch):
        split_idempotent(Matrix(Q, [[1, 0]]))


@st.composite
def idempotents(draw):
    """q = B (C B)^-1 C for random full-rank B, C, so q is idempotent of rank r."""
    field = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, 5))
    r = draw(st.integers(0, n))
    lo, hi = (-2, 2) if field.is_q else (0, field.p - 1)
    ent = st.integers(lo, hi)
    B = Matrix(field, [[draw(ent) for _ in range(r)] for _ in range(n)]) if r else Matrix.zeros(field, n, 0)
    Cm = Matrix(field, [[draw(ent) for _ in range(n)] for _ in range(r)]) if r else Matrix.zeros(field, 0, n)
    core = Cm @ B
    if core.rank() < r:
        return Matrix.zeros(field, n, n), 0
    aug = np.concatenate([core.a, field.eye(r)], axis=1)
    red, _ = field.rref(aug)
    inv = Matrix(field, np.ascontiguousarray(red[:, r:]))
    return B @ inv @ Cm, r


@settings(max_examples=150, deadline=None)
@given(idempotents())
def test_split_round_trip_and_rank_additivity(qr):
    q, r = qr
    f, n = q.field, q.rows
    assert q @ q == q
    i, p = split_idempotent(q)
    assert i @ p == q
    assert p @ i == Matrix.identity(f, q.rank())
    assert q.rank() == r or r == 0
    assert q.rank() + (Matrix.identity(f, n) - q).rank() == n


def test_nullspace_basis():
    m = Matrix(F3, [[1, 2, 0], [0, 0, 1]])
    (v,) = nullspace(m)
    assert m @ v == Matrix.zeros(F3, 2, 1)
