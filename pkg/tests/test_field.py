import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat.field import field_make, field_of_size, is_irreducible, least_irreducible
from modlat.linalg import FqMatrix, is_rref, rref, span, subspace_meet_join
from modlat.enumeration import enumerate_subspaces

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (11, 1), (13, 1)]


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = field_make(p, e)
    q = F.q
    assert q == p**e <= 16
    els = range(q)
    add, mul = F.add, F.mul
    for a, b, c in itertools.product(els, repeat=3):
        assert add[add[a, b], c] == add[a, add[b, c]]
        assert mul[mul[a, b], c] == mul[a, mul[b, c]]
        assert mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
    for a in els:
        assert add[a, 0] == a and mul[a, 1] == a
        assert add[a, F.neg[a]] == 0
        if a:
            assert mul[a, F.inv[a]] == 1
    assert (add == add.T).all() and (mul == mul.T).all()
    # nonzero elements form a group: every row of the multiplication table is a permutation
    for a in range(1, q):
        assert sorted(mul[a, 1:]) == list(range(1, q))


def test_f2():
    F = field_make(2, 1)
    assert F.q == 2 and F.add[1, 1] == 0


def test_f4_cubes_are_one():
    F = field_make(2, 2)
    assert F.q == 4
    assert all(F.power(x, 3) == 1 for x in range(1, 4))


@pytest.mark.parametrize("p,e", [(4, 1), (1, 1), (6, 2), (2, 0), (2, 5), (3, 4)])
def test_field_make_rejects(p, e):
    with pytest.raises(ValueError):
        field_make(p, e)


def test_field_of_size():
    assert field_of_size(8).p == 2 and field_of_size(8).e == 3
    assert field_of_size(49).e == 2
    for bad in (1, 6, 12):
        with pytest.raises(ValueError):
            field_of_size(bad)


def test_reduction_poly_is_least_irreducible():
    for p, e in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]:
        poly = least_irreducible(p, e)
        assert is_irreducible(poly, p) and poly[-1] == 1 and len(poly) == e + 1
        # brute force: no root and (for degree 4) no quadratic factor found by exhaustive search
        assert all(sum(c * x**i for i, c in enumerate(poly)) % p for x in range(p))


def test_rref_examples():
    F = field_make(2)
    I = FqMatrix.identity(F, 2)
    R, r = rref(I)
    assert R.rows == I.rows and r == 2
    M = FqMatrix.from_rows(F, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    R, r = rref(M)
    assert r == 2
    assert span(R) == {tuple(int(x) for x in v) for v in _brute_span(F, M.rows, 3)}
    Z = FqMatrix.zeros(F, 1, 3)
    R, r = rref(Z)
    assert r == 0


def test_rref_rejects_foreign_entries():
    F = field_make(3)
    with pytest.raises(ValueError):
        FqMatrix.from_rows(F, [(0, 3)])


def _brute_span(F, rows, n):
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [int(F.add[x, F.mul[c, y]]) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


@st.composite
def matrices(draw):
    q = draw(st.sampled_from([2, 3, 4, 5]))
    F = field_of_size(q)
    cols = draw(st.integers(1, 4 if q <= 4 else 3))
    rows = draw(st.integers(0, 4))
    entries = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return FqMatrix(F, cols, tuple(map(tuple, entries)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent_and_span_preserving(M):
    R, r = rref(M)
    assert is_rref(R)
    R2, r2 = rref(R)
    assert R2 == R and r2 == r
    assert _brute_span(M.field, M.rows, M.ncols) == _brute_span(M.field, R.rows, M.ncols)
    assert len(_brute_span(M.field, M.rows, M.ncols)) == M.field.q**r


def test_meet_join_examples():
    F = field_make(2)
    A = FqMatrix.from_rows(F, [(1, 0)])
    B = FqMatrix.from_rows(F, [(0, 1)])
    m, j = subspace_meet_join(A, B)
    assert m.nrows == 0 and j.nrows == 2
    A = FqMatrix.from_rows(F, [(1, 0, 0), (0, 1, 0)])
    B = FqMatrix.from_rows(F, [(0, 1, 0), (0, 0, 1)])
    m, j = subspace_meet_join(A, B)
    assert m.rows == ((0, 1, 0),) and j.nrows == 3
    m, j = subspace_meet_join(A, A)
    assert m == j == A


def test_meet_join_dimension_mismatch():
    F = field_make(2)
    with pytest.raises(ValueError):
        subspace_meet_join(FqMatrix.from_rows(F, [(1, 0)]), FqMatrix.from_rows(F, [(1, 0, 0)]))


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_modular_dimension_identity_and_set_meet(q, n):
    F = field_of_size(q)
    subs = enumerate_subspaces(F, n)
    spans = {s.rows: _brute_span(F, s.rows, n) for s in subs}
    for A, B in itertools.product(subs, repeat=2):
        m, j = subspace_meet_join(A, B)
        assert m.nrows + j.nrows == A.nrows + B.nrows
        if n <= 3:
            assert spans[m.rows] == spans[A.rows] & spans[B.rows]
