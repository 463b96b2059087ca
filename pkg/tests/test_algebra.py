from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amalgam.algebra import (
    AlgebraElement,
    AlgebraError,
    AlgebraMismatch,
    AssociativityViolation,
    DuplicateLabel,
    NonpositiveWeight,
    annihilator_in_ideal,
    associativity_witness,
    check_submultiplicative,
    commutator_ideal,
    find_identity,
    identity_map,
    is_commutative,
    is_square_dense,
    make_algebra,
    make_ideal,
    make_map,
    multiply,
    operator_norm_bound,
    quotient,
    subalgebra,
    verify_homomorphism,
    verify_ideal,
    zero_map,
)
from amalgam.catalog import bad_table, diagonal, dual_numbers, null_algebra, rationals
from amalgam.constructions import id_amalgam
from amalgam.linalg import Matrix, Subspace, unit

from conftest import algebras, rationals_st


def brute_associativity(a):
    n, c = a.dim, a.table
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for q in range(n):
                    lhs = sum(c[i][j][p] * c[p][k][q] for p in range(n))
                    rhs = sum(c[j][k][p] * c[i][p][q] for p in range(n))
                    if lhs != rhs:
                        return (i, j, k)
    return None


class TestMakeAlgebra:
    def test_one_dim_unital(self):
        a = make_algebra(1, ["u"], [[[1]]])
        assert find_identity(a).coords == (1,)

    def test_dual_numbers(self):
        a = dual_numbers()
        assert a.dim == 2 and a.table[1][1] == (0, 0)

    def test_bad_table_witness(self):
        with pytest.raises(AssociativityViolation) as e:
            make_algebra(2, None, bad_table())
        assert e.value.witness == (0, 0, 0)

    def test_witness_is_genuine(self):
        with pytest.raises(AssociativityViolation) as e:
            make_algebra(2, None, bad_table())
        i, j, k = e.value.witness
        t = bad_table()
        n = 2
        lhs = [sum(t[i][j][p] * t[p][k][q] for p in range(n)) for q in range(n)]
        rhs = [sum(t[j][k][p] * t[i][p][q] for p in range(n)) for q in range(n)]
        assert lhs != rhs

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            make_algebra(2, ["a", "a"])

    @pytest.mark.parametrize("w", [0, -1])
    def test_nonpositive_weight(self, w):
        with pytest.raises(NonpositiveWeight):
            make_algebra(1, ["u"], [[[1]]], [w])

    def test_bad_shape(self):
        with pytest.raises(AlgebraError):
            make_algebra(2, None, [[[0, 0]]])

    def test_zero_dimensional(self):
        a = make_algebra(0)
        assert a.dim == 0 and a.table == ()

    @given(algebras())
    def test_associativity_matches_brute_force(self, a):
        assert associativity_witness(a) is None
        assert brute_associativity(a) is None


class TestMultiply:
    def test_zero(self):
        a = dual_numbers()
        x = a.element((3, 4))
        assert multiply(a.element((0, 0)), x).coords == (0, 0)

    def test_dual_square(self):
        a = dual_numbers()
        x = a.element((1, 1))
        assert (x * x).coords == (1, 2)

    def test_id_amalgam_product(self):
        C = id_amalgam(rationals()).algebra
        x = C.element((1, 1))
        assert (x * x).coords == (1, 3)

    def test_mismatch(self):
        with pytest.raises(AlgebraMismatch):
            multiply(dual_numbers().element((1, 0)), rationals().element((1,)))

    @given(algebras(), st.data())
    def test_bilinear(self, a, data):
        vec = st.lists(rationals_st, min_size=a.dim, max_size=a.dim)
        x, y, z = (a.element(data.draw(vec)) for _ in range(3))
        c = data.draw(rationals_st)
        assert x * (y + z) == x * y + x * z
        assert (c * x) * y == c * (x * y)
        assert (x * y) * z == x * (y * z)


class TestMaps:
    def test_identity(self):
        a = diagonal(2)
        assert verify_homomorphism(identity_map(a)).ok

    def test_zero(self):
        assert verify_homomorphism(zero_map(dual_numbers(), rationals())).ok

    def test_dual_to_q_fails(self):
        m = make_map(dual_numbers(), rationals(), [[1, 1]])
        v = verify_homomorphism(m)
        assert not v.ok and v.witness == (1, 1)
        assert not m.multiplicative

    def test_norms(self):
        a = diagonal(2)
        assert operator_norm_bound(identity_map(a)) == 1
        assert operator_norm_bound(zero_map(a, a)) == 0
        assert operator_norm_bound(make_map(a, a, [[2, 0], [0, 1]])) == 2

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            make_map(diagonal(2), rationals(), [[1, 0], [0, 1]])


class TestIdeals:
    def test_whole_algebra(self):
        a = diagonal(2)
        assert make_ideal(a, [(1, 0), (0, 1)]).two_sided

    def test_eps_in_dual(self):
        assert make_ideal(dual_numbers(), [(0, 1)]).two_sided

    def test_coordinate_ideals(self):
        a = diagonal(2)
        assert make_ideal(a, [(1, 0)]).two_sided
        bad = make_ideal(a, [(1, 1)])
        assert not bad.two_sided
        side, b, s = verify_ideal(bad).witness
        assert a.mul(unit(2, b), bad.subspace.basis[s]) not in bad.subspace

    def test_annihilator(self):
        Q, B = rationals(), diagonal(2)
        assert annihilator_in_ideal(zero_map(Q, B), make_ideal(B, [(1, 0), (0, 1)])) == Subspace.full(2)
        assert annihilator_in_ideal(identity_map(B), make_ideal(B, [(1, 0), (0, 1)])).dim == 0
        theta = make_map(Q, B, [[1], [0]])
        assert annihilator_in_ideal(theta, make_ideal(B, [(1, 0), (0, 1)])) == Subspace.span([(0, 1)], 2)

    def test_quotient(self):
        q, proj = quotient(dual_numbers(), Subspace.span([(0, 1)], 2))
        assert q.dim == 1 and q.table == (((1,),),)
        assert proj.multiplicative

    def test_subalgebra_labels(self):
        s = subalgebra(dual_numbers(), Subspace.span([(0, 1)], 2))
        assert s.labels == ("eps",) and s.table == (((0,),),)

    def test_subalgebra_of_eps_is_not_square_dense(self):
        assert not is_square_dense(subalgebra(dual_numbers(), Subspace.span([(0, 1)], 2)))


class TestIdentity:
    def test_q(self):
        assert find_identity(rationals()).coords == (1,)

    def test_null(self):
        assert find_identity(null_algebra(1)) is None

    def test_id_amalgam(self):
        assert find_identity(id_amalgam(rationals()).algebra).coords == (1, 0)

    @given(algebras())
    def test_identity_is_two_sided_and_unique(self, a):
        e = find_identity(a)
        if e is None:
            return
        for j in range(a.dim):
            ej = a.unit_vector(j)
            assert a.mul(e.coords, ej) == ej == a.mul(ej, e.coords)
        # any other two-sided identity e' equals e, since e' = e' e = e
        for j in range(a.dim):
            other = a.element(a.unit_vector(j))
            if all(a.mul(other.coords, a.unit_vector(k)) == a.unit_vector(k) for k in range(a.dim)):
                assert (other * e) == other and other == e


class TestCommutativity:
    def test_dual(self):
        assert is_commutative(dual_numbers()).ok

    def test_t2(self, cat):
        v = is_commutative(cat["T2"])
        assert not v.ok
        i, j = v.witness
        T = cat["T2"]
        assert T.table[i][j] != T.table[j][i]
        assert {T.labels[i], T.labels[j]} == {"e11", "e12"}

    def test_one_dim(self):
        assert is_commutative(null_algebra(1)).ok and is_commutative(rationals()).ok

    def test_commutator_ideal_of_t2(self, cat):
        assert commutator_ideal(cat["T2"]) == Subspace.span([(0, 0, 1)], 3)

    @given(algebras())
    def test_witness_valid(self, a):
        v = is_commutative(a)
        brute = all(a.table[i][j] == a.table[j][i] for i in range(a.dim) for j in range(a.dim))
        assert v.ok == brute
        if not v.ok:
            i, j = v.witness
            assert a.table[i][j] != a.table[j][i]


class TestSquareDense:
    def test_unital(self):
        assert is_square_dense(dual_numbers())

    def test_null(self):
        assert not is_square_dense(null_algebra(1))


def test_element_norm():
    a = make_algebra(2, None, [[[0, 0], [0, 0]], [[0, 0], [0, 0]]], [1, Fraction(1, 2)])
    assert AlgebraElement(a, (Fraction(-3), Fraction(4))).norm() == 5


def test_submultiplicative_catalogue(cat):
    for a in cat.values():
        assert check_submultiplicative(a) <= 1


def test_matrix_map_compose():
    a = diagonal(2)
    swap = make_map(a, a, Matrix.from_rows([[0, 1], [1, 0]]))
    assert swap.multiplicative
    assert swap.compose(swap).matrix == Matrix.identity(2)
