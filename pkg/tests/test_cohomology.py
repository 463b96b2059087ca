import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amalgam.algebra import AlgebraError, find_identity, is_square_dense, make_ideal, make_map
from amalgam.catalog import (
    diagonal,
    dual_numbers,
    matrix_algebra,
    null_algebra,
    rationals,
    upper_triangular,
)
from amalgam.constructions import amalgamate, cartesian, id_amalgam, lau_product
from amalgam.cohomology import (
    DecompositionMismatch,
    Derivation,
    LiftError,
    UncertifiedBimodule,
    compose_id_amalgam_derivation,
    cyclic_derivations,
    decompose_derivation_id_amalgam,
    decompose_derivation_lau,
    derivation_dim_by_rank,
    derivation_space,
    flatten,
    h1,
    h1_dual,
    h1c_dim,
    inner_derivation_matrix,
    inner_derivations,
    inner_derivations_are_cyclic,
    inner_dim_by_rank,
    is_cyclically_amenable,
    is_derivation,
    is_inner,
    is_weakly_amenable,
    lift_derivation,
    lift_is_injective_on_h1,
    theorem_embedding_lau_check,
    theorem_h1_doubling_check,
    unflatten,
    weak_amenability_amalgam_checks,
)
from amalgam.duality import dual_bimodule, make_bimodule, regular_bimodule, zero_bimodule
from amalgam.linalg import Matrix, unit
from amalgam.structure import HypothesisViolation, characters

from conftest import ALL, SMALL, algebras, amalgams, matrices


def leibniz_holds(a, x, m):
    """Pointwise D(e_i e_j) = e_i.D(e_j) + D(e_i).e_j, written out independently."""
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = m.apply(a.table[i][j])
            left = x.act_left(unit(a.dim, i), m.column(j))
            right = x.act_right(m.column(i), unit(a.dim, j))
            if lhs != tuple(u + v for u, v in zip(left, right)):
                return False
    return True


class TestDerivationSpace:
    def test_q(self):
        Q = rationals()
        assert derivation_space(Q, dual_bimodule(Q)).dim == 0

    def test_zero_product(self):
        N = null_algebra(1)
        assert derivation_space(N, dual_bimodule(N)).dim == 1

    @pytest.mark.parametrize("factory, z1, b1", [
        (rationals, 0, 0),
        (lambda: null_algebra(1), 1, 0),
        (dual_numbers, 1, 0),
        (upper_triangular, 1, 1),
        (lambda: matrix_algebra(2), 3, 3),
        (lambda: diagonal(2), 0, 0),
    ])
    def test_known_dimensions(self, factory, z1, b1):
        rep = h1_dual(factory())
        assert (rep.z1_dim, rep.b1_dim, rep.h1_dim) == (z1, b1, z1 - b1)

    @given(algebras(ALL))
    def test_rank_oracle(self, a):
        X = dual_bimodule(a)
        assert derivation_space(a, X).dim == derivation_dim_by_rank(a, X)
        assert inner_derivations(a, X).dim == inner_dim_by_rank(a, X)

    @given(algebras())
    def test_basis_satisfies_leibniz(self, a):
        X = dual_bimodule(a)
        for d in h1(a, X).z1_basis:
            assert leibniz_holds(a, X, d.matrix) and is_derivation(a, X, d.matrix).ok

    @given(algebras())
    def test_regular_bimodule(self, a):
        X = regular_bimodule(a)
        rep = h1(a, X)
        assert 0 <= rep.b1_dim <= rep.z1_dim and rep.z1_dim == derivation_dim_by_rank(a, X)

    def test_uncertified_bimodule(self):
        Q = rationals()
        with pytest.raises(UncertifiedBimodule):
            derivation_space(Q, make_bimodule(Q, 1, [[[2]]], [[[1]]]))

    def test_non_derivation_witness(self):
        Q = rationals()
        v = is_derivation(Q, dual_bimodule(Q), Matrix.from_rows([[1]]))
        assert not v.ok and v.witness == (0, 0)

    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_flatten_roundtrip(self, m, n, data):
        M = data.draw(matrices(m, n))
        assert unflatten(flatten(M), m, n) == M


class TestInner:
    def test_commutative_regular(self):
        a = diagonal(2)
        assert inner_derivations(a, regular_bimodule(a)).dim == 0

    def test_t2_regular(self):
        T = upper_triangular()
        X = regular_bimodule(T)
        ad = inner_derivation_matrix(T, X, (0, 0, 1))
        assert ad.apply((1, 0, 0)) == (0, 0, 1)
        assert inner_derivations(T, X).dim > 0

    def test_zero_bimodule(self):
        a = upper_triangular()
        assert inner_derivations(a, zero_bimodule(a)).dim == 0

    @given(algebras())
    def test_inner_is_cyclic(self, a):
        assert inner_derivations_are_cyclic(a)

    def test_report_json(self):
        js = h1_dual(upper_triangular()).to_json()
        assert json.loads(json.dumps(js))["h1_dim"] == 0


class TestWeakAmenability:
    def test_examples(self):
        assert is_weakly_amenable(rationals())
        assert not is_weakly_amenable(null_algebra(1))
        assert not is_weakly_amenable(dual_numbers())
        assert is_weakly_amenable(matrix_algebra(2))

    def test_cyclic(self):
        assert cyclic_derivations(null_algebra(1)).dim == 0
        assert is_cyclically_amenable(null_algebra(1))
        assert is_cyclically_amenable(rationals())
        T = upper_triangular()
        assert cyclic_derivations(T).issubset(derivation_space(T, dual_bimodule(T)))

    def test_dual_numbers_cyclic(self):
        D = dual_numbers()
        # the only derivation class sends eps to delta_1, and <1, D eps> + <eps, D 1> = 1 is not zero
        assert cyclic_derivations(D).dim == 0 and is_cyclically_amenable(D)
        assert h1c_dim(D) == 0

    @given(algebras())
    def test_weakly_amenable_implies_cyclically(self, a):
        if is_weakly_amenable(a):
            assert is_cyclically_amenable(a)

    @given(amalgams())
    def test_implications(self, r):
        checks = weak_amenability_amalgam_checks(r)
        assert set(checks) == {"commutative-iff", "sufficiency", "id-iff", "necessity-A"}
        assert "fail" not in checks.values()

    def test_commutative_example(self):
        Q, B = rationals(), diagonal(2)
        r = amalgamate(Q, B, make_map(Q, B, [[1], [0]]), make_ideal(B, [(1, 0)]))
        assert weak_amenability_amalgam_checks(r)["commutative-iff"] == "pass"
        assert is_weakly_amenable(r.algebra)

    def test_id_t2(self):
        checks = weak_amenability_amalgam_checks(id_amalgam(upper_triangular()))
        assert checks["id-iff"] == "pass" and checks["commutative-iff"] == "not-applicable"

    def test_zero_product_ideal(self):
        r = cartesian(rationals(), null_algebra(1))
        assert not is_weakly_amenable(r.algebra)
        assert weak_amenability_amalgam_checks(r)["commutative-iff"] == "pass"


class TestLift:
    def test_zero(self):
        r = id_amalgam(dual_numbers())
        d = Derivation(r.A, dual_bimodule(r.A), Matrix.zero(2, 2))
        assert lift_derivation(r, d).matrix.is_zero()

    @given(amalgams(), st.data())
    def test_inner_lifts_to_inner(self, r, data):
        A = r.A
        if A.dim == 0:
            return
        f = data.draw(st.lists(st.integers(-3, 3), min_size=A.dim, max_size=A.dim))
        X = dual_bimodule(A)
        d = Derivation(A, X, inner_derivation_matrix(A, X, f))
        lifted = lift_derivation(r, d)
        C = r.algebra
        expected = inner_derivation_matrix(C, dual_bimodule(C), tuple(f) + (0,) * r.n_I)
        assert lifted.matrix == expected

    def test_non_inner_stays_non_inner(self):
        N = null_algebra(1)
        for r in (id_amalgam(N), cartesian(N, rationals())):
            d = Derivation(N, dual_bimodule(N), Matrix.from_rows([[1]]))
            assert not is_inner(d) and not is_inner(lift_derivation(r, d))

    def test_rejects_non_derivation(self):
        r = id_amalgam(rationals())
        with pytest.raises(LiftError):
            lift_derivation(r, Derivation(r.A, dual_bimodule(r.A), Matrix.from_rows([[1]])))

    @given(amalgams())
    def test_injective_on_cohomology(self, r):
        assert lift_is_injective_on_h1(r)


class TestIdAmalgam:
    @pytest.mark.parametrize("factory", [rationals, upper_triangular, lambda: matrix_algebra(2), dual_numbers])
    def test_decomposition_roundtrip(self, factory):
        A = factory()
        r = id_amalgam(A)
        rep = h1_dual(r.algebra)
        for d in rep.z1_basis:
            D1, D2 = decompose_derivation_id_amalgam(r, d)
            assert compose_id_amalgam_derivation(r, D1.matrix, D2.matrix).matrix == d.matrix
        assert rep.z1_dim == 2 * h1_dual(A).z1_dim

    def test_lift_recovers_blocks(self):
        A = dual_numbers()
        r = id_amalgam(A)
        X = dual_bimodule(A)
        D1 = h1_dual(A).z1_basis[0]
        D1, D2 = decompose_derivation_id_amalgam(r, lift_derivation(r, D1))
        assert D2.matrix.is_zero() and D1.matrix == h1_dual(A).z1_basis[0].matrix
        assert X == D1.target

    def test_requires_square_dense(self):
        r = id_amalgam(null_algebra(1))
        with pytest.raises(DecompositionMismatch):
            decompose_derivation_id_amalgam(r, h1_dual(r.algebra).z1_basis[0])

    @pytest.mark.parametrize("factory", [rationals, upper_triangular, lambda: matrix_algebra(2), dual_numbers])
    def test_doubling(self, factory):
        A = factory()
        assert theorem_h1_doubling_check(A)
        assert h1_dual(id_amalgam(A).algebra).h1_dim == 2 * h1_dual(A).h1_dim

    def test_doubling_hypothesis(self):
        with pytest.raises(HypothesisViolation):
            theorem_h1_doubling_check(null_algebra(1))

    @given(algebras(SMALL))
    def test_doubling_on_square_dense(self, a):
        if is_square_dense(a):
            assert theorem_h1_doubling_check(a)


class TestLau:
    def test_zero_derivation(self):
        r = lau_product(rationals(), matrix_algebra(2), (1,))
        zero = Derivation(r.algebra, dual_bimodule(r.algebra), Matrix.zero(5, 5))
        D1, D2, D4 = decompose_derivation_lau(r, zero)
        assert D1.matrix.is_zero() and D2.is_zero() and D4.matrix.is_zero()

    @pytest.mark.parametrize("B", [rationals, lambda: matrix_algebra(2), upper_triangular, dual_numbers])
    def test_full_basis_decomposes(self, B):
        r = lau_product(rationals(), B(), (1,))
        for d in h1_dual(r.algebra).z1_basis:
            D1, D2, D4 = decompose_derivation_lau(r, d)
            # with b' = 1 condition (2) reads D2(b) = (<b, D4 1> + <1, D4 b>) phi
            m = r.I_algebra.dim
            e = find_identity(r.I_algebra).coords
            for s in range(m):
                coeff = sum(e[t] * (D4.matrix.rows[s][t] + D4.matrix.rows[t][s]) for t in range(m))
                assert D2.column(s) == (coeff,)

    def test_requires_square_dense(self):
        r = lau_product(rationals(), null_algebra(1), (1,))
        with pytest.raises(DecompositionMismatch):
            decompose_derivation_lau(r, h1_dual(r.algebra).z1_basis[0])

    def test_wrong_kind(self):
        r = id_amalgam(rationals())
        zero = Derivation(r.algebra, dual_bimodule(r.algebra), Matrix.zero(2, 2))
        with pytest.raises(DecompositionMismatch):
            decompose_derivation_lau(r, zero)

    @pytest.mark.parametrize("A, B", [
        (rationals, rationals),
        (rationals, lambda: null_algebra(1)),
        (rationals, dual_numbers),
        (lambda: diagonal(2), upper_triangular),
        (dual_numbers, lambda: matrix_algebra(2)),
    ])
    def test_embedding(self, A, B):
        a, b = A(), B()
        for ch in characters(a).characters:
            assert theorem_embedding_lau_check(a, b, ch.coords)

    def test_corollary_direction(self):
        for fa in SMALL[1:]:
            a = fa()
            for ch in characters(a).characters:
                for fb in SMALL:
                    b = fb()
                    if is_weakly_amenable(lau_product(a, b, ch.coords).algebra):
                        assert is_weakly_amenable(a) and is_cyclically_amenable(b)

    def test_uncertified_algebra_error(self):
        with pytest.raises(AlgebraError):
            lau_product(rationals(), rationals(), (2,))
