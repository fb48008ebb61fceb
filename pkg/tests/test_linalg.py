import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bialgebra_realization.linalg import (
    Q,
    Subspace,
    contains,
    format_rational,
    inverse,
    kernel,
    orthogonal_complement,
    rank,
    rational,
    row_reduce,
    span,
    subspace_equal,
    subspace_sum,
)
from helpers import mat, vec

fractions = st.builds(
    lambda n, d: Q(n, d), st.integers(-4, 4), st.sampled_from([1, 1, 1, 2, 3, 5])
)


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish entries make rank deficiency common
    entries = draw(st.lists(st.one_of(st.just(Q(0)), fractions), min_size=r * c, max_size=r * c))
    m = np.empty((r, c), dtype=object)
    m.flat[:] = entries
    return m


def sympy_rank(m):
    if m.shape[0] == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m]).rank()


class TestRationals:
    def test_canonical_form(self):
        q = rational("-4/6")
        assert q.denominator > 0 and format_rational(q) == "-2/3"

    def test_exact_sum(self):
        assert rational("1/3") + rational("1/6") == rational("1/2")

    @pytest.mark.parametrize("bad", ["0.5", "1/0", "x", "", "1//2"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ValueError):
            rational(bad)

    def test_format_roundtrip(self):
        for s in ["0", "7", "-1/2", "22/7"]:
            assert format_rational(rational(s)) == s


class TestRowReduce:
    def test_proportional_rows(self):
        s = row_reduce(mat([[1, 2], [2, 4]]))
        assert s.dim == 1
        assert list(s.basis[0]) == [1, 2]

    def test_identity(self):
        s = row_reduce(mat(np.eye(3, dtype=int).tolist()))
        assert (s.basis == mat(np.eye(3, dtype=int).tolist())).all()

    def test_hand_elimination(self):
        s = row_reduce(mat([["1/2", 1], [1, 3]]))
        assert s.dim == 2
        assert (s.basis == mat([[1, 0], [0, 1]])).all()

    def test_pivots_strictly_increase(self):
        s = row_reduce(mat([[0, 0, 1, 2], [0, 3, 1, 0], [0, 6, 3, 2]]))
        assert list(s.pivots) == sorted(set(s.pivots))


class TestKernel:
    def test_zero_map(self):
        assert kernel(mat([[0, 0, 0], [0, 0, 0]])).dim == 3

    def test_injective(self):
        assert kernel(mat(np.eye(3, dtype=int).tolist())).dim == 0

    def test_hand_solve(self):
        expected = span([vec(1, -1, 0), vec(0, 0, 1)], 3)
        assert kernel(mat([[1, 1, 0]])) == expected


class TestComplement:
    def test_zero_and_full(self):
        assert orthogonal_complement(Subspace.zero(3)) == Subspace.full(3)
        assert orthogonal_complement(Subspace.full(3)) == Subspace.zero(3)

    def test_hand_solve(self):
        s = span([vec(1, -1, 0), vec(0, 0, 1)], 3)
        assert orthogonal_complement(s) == span([vec(1, 1, 0)], 3)


class TestSumContains:
    def test_idempotent_sum(self):
        s = span([vec(1, 2, 3)], 3)
        assert subspace_sum(s, s) == s

    def test_contains_scaled(self):
        assert contains(span([vec(1, 1)], 2), vec(2, 2))
        assert not contains(span([vec(1, 1)], 2), vec(1, 2))

    def test_equal_full(self):
        assert subspace_equal(span([vec(1, 0), vec(1, 1)], 2), Subspace.full(2))

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            Subspace.zero(2).sum(Subspace.zero(3))


def test_inverse():
    m = mat([[2, 1], [1, 1]])
    assert (m @ inverse(m) == mat([[1, 0], [0, 1]])).all()
    with pytest.raises(ZeroDivisionError):
        inverse(mat([[1, 2], [2, 4]]))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(m):
    k = kernel(m)
    assert rank(m) + k.dim == m.shape[1]
    for b in k.basis:
        assert not np.any(m @ b != 0)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_double_complement(m):
    s = row_reduce(m)
    perp = s.orthogonal_complement()
    assert perp.dim + s.dim == s.ambient_dim
    assert perp.orthogonal_complement() == s
    if s.dim and perp.dim:
        assert not np.any(s.basis @ perp.basis.T != 0)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5, max_cols=6), st.data())
def test_canonical_under_row_operations(m, data):
    # premultiplying by an invertible matrix keeps the row space
    r = m.shape[0]
    if r == 0:
        return
    entries = data.draw(st.lists(fractions, min_size=r * r, max_size=r * r))
    p = np.empty((r, r), dtype=object)
    p.flat[:] = entries
    if rank(p) < r:
        return
    a, b = row_reduce(m), row_reduce(p @ m)
    assert a == b and hash(a) == hash(b)
    assert (a.basis == b.basis).all()


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5, max_cols=6), matrices(max_rows=5, max_cols=6))
def test_intersection_dimension_formula(m1, m2):
    if m1.shape[1] != m2.shape[1]:
        return
    a, b = row_reduce(m1), row_reduce(m2)
    meet = a.intersection(b)
    assert meet.dim + a.sum(b).dim == a.dim + b.dim
    assert a.contains_subspace(meet) and b.contains_subspace(meet)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=5, max_cols=6))
def test_quotient_map_kernel(m):
    s = row_reduce(m)
    q = s.quotient_map()
    assert q.shape[0] == s.ambient_dim - s.dim
    assert kernel(q) == s if q.shape[0] else s == Subspace.full(s.ambient_dim)
