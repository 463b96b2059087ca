from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amalgam.linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    null_space,
    rank,
    rref,
    solve,
    subspace_ops,
    to_fraction,
    unit,
)

from conftest import any_matrix, matrices, rationals_st


def M(rows):
    return Matrix.from_rows(rows)


class TestRref:
    def test_identity(self):
        r = rref(Matrix.identity(2))
        assert r.matrix == Matrix.identity(2)
        assert r.rank == 2
        assert r.pivots == [0, 1]

    def test_dependent_rows(self):
        r = rref(M([[1, 2], [2, 4]]))
        assert r.matrix == M([[1, 2], [0, 0]])
        assert (r.rank, r.pivots) == (1, [0])

    def test_permutation(self):
        r = rref(M([[0, 1], [1, 0]]))
        assert r.matrix == Matrix.identity(2)
        assert r.rank == 2

    @given(any_matrix())
    def test_idempotent(self, m):
        once = rref(m).matrix
        assert rref(once).matrix == once

    @given(any_matrix(), st.randoms(use_true_random=False))
    def test_row_order_does_not_matter(self, m, rnd):
        rows = list(m.rows)
        rnd.shuffle(rows)
        assert rref(Matrix(tuple(rows), m.ncols)).matrix == rref(m).matrix

    @given(any_matrix())
    def test_rank_of_transpose(self, m):
        assert rank(m) == rank(m.T)


class TestNullSpace:
    def test_zero_matrix(self):
        assert null_space(Matrix.zero(2, 3)) == Subspace.full(3)

    def test_identity(self):
        assert null_space(Matrix.identity(3)).dim == 0

    def test_one_equation(self):
        assert null_space(M([[1, 1]])) == Subspace.span([(1, -1)], 2)

    @given(any_matrix())
    def test_kernel_vectors_are_killed(self, m):
        ns = null_space(m)
        assert ns.dim == m.ncols - rank(m)
        for v in ns.basis:
            assert all(x == 0 for x in m.apply(v))


class TestSolve:
    def test_identity(self):
        assert solve(Matrix.identity(2), [Fraction(3, 2), -1]) == (Fraction(3, 2), -1)

    def test_underdetermined(self):
        x = solve(M([[1, 1]]), [2])
        assert x[0] + x[1] == 2

    def test_inconsistent(self):
        assert solve(M([[1], [1]]), [0, 1]) is None

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve(Matrix.identity(2), [1])

    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_solves_consistent_systems(self, r, c, data):
        m = data.draw(matrices(r, c))
        x = data.draw(st.lists(rationals_st, min_size=c, max_size=c))
        b = m.apply(x)
        y = solve(m, b)
        assert y is not None and m.apply(y) == b


class TestSubspace:
    def test_equal(self):
        a = Subspace.span([(1, 2, 3)], 3)
        ops = subspace_ops(a, a)
        assert ops.sum == a and ops.intersection == a and ops.equality and ops.containment

    def test_complementary_lines(self):
        ops = subspace_ops(Subspace.span([(1, 0)], 2), Subspace.span([(0, 1)], 2))
        assert ops.sum == Subspace.full(2)
        assert ops.intersection.dim == 0

    def test_zero_is_contained(self):
        assert subspace_ops(Subspace.zero(3), Subspace.span([(1, 1, 0)], 3)).containment

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            subspace_ops(Subspace.zero(2), Subspace.zero(3))

    def test_canonical_representative(self):
        assert Subspace.span([(2, 4), (1, 1)], 2) == Subspace.span([(0, 1), (3, 0)], 2)

    @given(st.integers(1, 5), st.data())
    def test_dimension_formula(self, n, data):
        va = data.draw(st.lists(st.lists(rationals_st, min_size=n, max_size=n), max_size=4))
        vb = data.draw(st.lists(st.lists(rationals_st, min_size=n, max_size=n), max_size=4))
        a, b = Subspace.span(va, n), Subspace.span(vb, n)
        ops = subspace_ops(a, b)
        assert ops.sum.dim + ops.intersection.dim == a.dim + b.dim
        assert ops.intersection.issubset(a) and ops.intersection.issubset(b)
        assert a.issubset(ops.sum) and b.issubset(ops.sum)

    @given(st.integers(1, 5), st.data())
    def test_coordinates_roundtrip(self, n, data):
        vs = data.draw(st.lists(st.lists(rationals_st, min_size=n, max_size=n), min_size=1, max_size=4))
        s = Subspace.span(vs, n)
        for v in vs:
            c = s.coordinates(v)
            assert c is not None and s.element(c) == tuple(to_fraction(x) for x in v)

    def test_outside_vector_has_no_coordinates(self):
        assert Subspace.span([unit(3, 0)], 3).coordinates((0, 1, 0)) is None


class TestRationals:
    @pytest.mark.parametrize("text, value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 5/1 ", Fraction(5))])
    def test_parse(self, text, value):
        assert to_fraction(text) == value

    @pytest.mark.parametrize("bad", [0.5, "1.5", "1e3", True, None, "x"])
    def test_rejects_inexact(self, bad):
        with pytest.raises((TypeError, ValueError)):
            to_fraction(bad)

    @given(rationals_st, rationals_st)
    def test_canonical_form(self, a, b):
        s = a + b
        assert s.denominator > 0
        assert gcd(abs(s.numerator), s.denominator) == 1
