"""Derivations, inner derivations and first cohomology.

A derivation D: A -> X is stored as the matrix whose column j is D(e_j) in
the basis of X.  Spaces of derivations are subspaces of Q^(m*n) under the
flattening ``D[q][j] -> j*m + q`` (column by column).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Verdict,
    is_commutative,
    is_square_dense,
)
from .constructions import AmalgamResult, id_amalgam, lau_product
from .duality import Bimodule, dual_bimodule
from .linalg import ZERO, Matrix, Subspace, _Echelon, _sparse, null_space_sparse, rank_sparse, unit
from .structure import HypothesisViolation


class UncertifiedBimodule(AlgebraError):
    pass


class DecompositionMismatch(AlgebraError):
    pass


class LiftError(AlgebraError):
    pass


@dataclass(frozen=True)
class Derivation:
    algebra: FiniteAlgebra
    target: Bimodule
    matrix: Matrix

    def __call__(self, v):
        return self.matrix.apply(v)

    def flat(self) -> tuple:
        return flatten(self.matrix)


@dataclass(frozen=True)
class CohomologyReport:
    z1_dim: int
    b1_dim: int
    h1_dim: int
    z1_basis: tuple
    b1_basis: tuple

    def to_json(self) -> dict:
        return {
            "z1_dim": self.z1_dim,
            "b1_dim": self.b1_dim,
            "h1_dim": self.h1_dim,
            "z1_basis": [[[str(x) for x in r] for r in d.matrix.rows] for d in self.z1_basis],
            "b1_basis": [[[str(x) for x in r] for r in d.matrix.rows] for d in self.b1_basis],
        }


def flatten(m: Matrix) -> tuple:
    return tuple(m.rows[q][j] for j in range(m.ncols) for q in range(m.nrows))


def unflatten(v, m: int, n: int) -> Matrix:
    return Matrix(tuple(tuple(v[j * m + q] for j in range(n)) for q in range(m)), n)


def leibniz_rows(a: FiniteAlgebra, x: Bimodule) -> list:
    """Sparse rows of D(e_i e_j) - e_i.D(e_j) - D(e_i).e_j = 0 over all i, j and components q."""
    n, m = a.dim, x.dim
    c, L, R = a.table, x.left, x.right
    rows = []
    for i in range(n):
        for j in range(n):
            for q in range(m):
                row = {}
                for k in range(n):
                    v = c[i][j][k]
                    if v:
                        row[k * m + q] = row.get(k * m + q, ZERO) + v
                for p in range(m):
                    v = L[i][p][q]
                    if v:
                        row[j * m + p] = row.get(j * m + p, ZERO) - v
                    v = R[p][j][q]
                    if v:
                        row[i * m + p] = row.get(i * m + p, ZERO) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def _require_certified(a: FiniteAlgebra, x: Bimodule) -> None:
    if x.algebra != a:
        raise UncertifiedBimodule("bimodule is over a different algebra")
    if not x.certified:
        raise UncertifiedBimodule("bimodule axioms fail")


@lru_cache(maxsize=512)
def derivation_space(a: FiniteAlgebra, x: Bimodule) -> Subspace:
    """Z^1(a, x) as a subspace of flattened m x n matrices."""
    _require_certified(a, x)
    return null_space_sparse(leibniz_rows(a, x), a.dim * x.dim)


def inner_derivation_matrix(a: FiniteAlgebra, x: Bimodule, v) -> Matrix:
    """ad_v: e_j -> e_j.v - v.e_j."""
    cols = []
    for j in range(a.dim):
        ej = unit(a.dim, j)
        cols.append(tuple(s - t for s, t in zip(x.act_left(ej, v), x.act_right(v, ej))))
    return Matrix.from_columns(cols, x.dim)


@lru_cache(maxsize=512)
def inner_derivations(a: FiniteAlgebra, x: Bimodule) -> Subspace:
    _require_certified(a, x)
    gens = [flatten(inner_derivation_matrix(a, x, unit(x.dim, p))) for p in range(x.dim)]
    return Subspace.span(gens, a.dim * x.dim)


def is_derivation(a: FiniteAlgebra, x: Bimodule, m: Matrix) -> Verdict:
    """Leibniz rule checked pointwise on basis pairs; witness (i, j)."""
    for i in range(a.dim):
        ei = unit(a.dim, i)
        for j in range(a.dim):
            ej = unit(a.dim, j)
            lhs = m.apply(a.table[i][j])
            rhs = tuple(s + t for s, t in zip(x.act_left(ei, m.column(j)), x.act_right(m.column(i), ej)))
            if lhs != rhs:
                return Verdict(False, (i, j))
    return Verdict(True)


def h1(a: FiniteAlgebra, x: Bimodule) -> CohomologyReport:
    z = derivation_space(a, x)
    b = inner_derivations(a, x)
    if not b.issubset(z):
        raise AlgebraError("an inner derivation failed the Leibniz rule")
    m, n = x.dim, a.dim
    return CohomologyReport(
        z.dim,
        b.dim,
        z.dim - b.dim,
        tuple(Derivation(a, x, unflatten(v, m, n)) for v in z.basis),
        tuple(Derivation(a, x, unflatten(v, m, n)) for v in b.basis),
    )


@lru_cache(maxsize=256)
def _dual(a: FiniteAlgebra) -> Bimodule:
    return dual_bimodule(a)


def h1_dual(a: FiniteAlgebra) -> CohomologyReport:
    return h1(a, _dual(a))


def is_weakly_amenable(a: FiniteAlgebra) -> bool:
    return h1_dual(a).h1_dim == 0


def is_inner(d: Derivation) -> bool:
    return d.flat() in inner_derivations(d.algebra, d.target)


# ---------------------------------------------------------------------------
# cyclic derivations


@lru_cache(maxsize=256)
def cyclic_derivations(b: FiniteAlgebra) -> Subspace:
    """Derivations D: b -> b* with <e_i, D(e_j)> + <e_j, D(e_i)> = 0."""
    n = b.dim
    X = _dual(b)
    rows = leibniz_rows(b, X)
    for i in range(n):
        for j in range(i, n):
            # entry D[i][j] sits at j*n + i
            row = {}
            row[j * n + i] = row.get(j * n + i, ZERO) + 1
            row[i * n + j] = row.get(i * n + j, ZERO) + 1
            rows.append(row)
    return null_space_sparse(rows, n * n)


def is_cyclically_amenable(b: FiniteAlgebra) -> bool:
    return cyclic_derivations(b).issubset(inner_derivations(b, _dual(b)))


def h1c_dim(b: FiniteAlgebra) -> int:
    zc = cyclic_derivations(b)
    return zc.dim - (zc & inner_derivations(b, _dual(b))).dim


def inner_derivations_are_cyclic(b: FiniteAlgebra) -> bool:
    return inner_derivations(b, _dual(b)).issubset(cyclic_derivations(b))


# ---------------------------------------------------------------------------
# derivations on amalgams


def lift_derivation(r: AmalgamResult, d: Derivation) -> Derivation:
    """D~(a, i) = (D(a), 0), checked to be a derivation that is inner exactly when D is."""
    A, C = r.A, r.algebra
    if d.algebra != A or d.target != _dual(A):
        raise LiftError("expected a derivation of A into A*")
    if not is_derivation(A, d.target, d.matrix):
        raise LiftError("input is not a derivation")
    n, N = A.dim, C.dim
    cols = [d.matrix.column(j) + (ZERO,) * r.n_I for j in range(n)] + [(ZERO,) * N] * r.n_I
    lifted = Derivation(C, _dual(C), Matrix.from_columns(cols, N))
    ok = is_derivation(C, lifted.target, lifted.matrix)
    if not ok:
        raise LiftError(f"lift fails the Leibniz rule at {ok.witness}")
    if is_inner(lifted) != is_inner(d):
        raise LiftError("lift changed whether the derivation is inner")
    return lifted


def _block(m: Matrix, r0: int, r1: int, c0: int, c1: int) -> Matrix:
    return Matrix(tuple(tuple(row[c0:c1]) for row in m.rows[r0:r1]), c1 - c0)


def decompose_derivation_id_amalgam(r: AmalgamResult, d: Derivation):
    """Split a derivation of A ⋈^id A into D1, D2 with D(a, b) = (D1 a + D2 b, D2 a + D2 b)."""
    A = r.A
    if r.kind != "id":
        raise DecompositionMismatch("not an A ⋈^id A amalgam")
    if not is_square_dense(A):
        raise DecompositionMismatch("A^2 does not span A")
    n = A.dim
    m = d.matrix
    D1, D2 = _block(m, 0, n, 0, n), _block(m, 0, n, n, 2 * n)
    D3, D4 = _block(m, n, 2 * n, 0, n), _block(m, n, 2 * n, n, 2 * n)
    if D3 != D2 or D4 != D2:
        raise DecompositionMismatch("off-diagonal blocks do not agree")
    X = _dual(A)
    for name, blk in (("D1", D1), ("D2", D2)):
        if not is_derivation(A, X, blk):
            raise DecompositionMismatch(f"{name} is not a derivation of A")
    rebuilt = compose_id_amalgam_derivation(r, D1, D2)
    if rebuilt.matrix != m:
        raise DecompositionMismatch("reconstruction differs")
    e1, e2 = Derivation(A, X, D1), Derivation(A, X, D2)
    if is_inner(d) != (is_inner(e1) and is_inner(e2)):
        raise DecompositionMismatch("innerness does not match the blocks")
    return e1, e2


def compose_id_amalgam_derivation(r: AmalgamResult, D1: Matrix, D2: Matrix) -> Derivation:
    n = r.A.dim
    rows = [tuple(D1.rows[q]) + tuple(D2.rows[q]) for q in range(n)]
    rows += [tuple(D2.rows[q]) + tuple(D2.rows[q]) for q in range(n)]
    return Derivation(r.algebra, _dual(r.algebra), Matrix(tuple(rows), 2 * n))


def decompose_derivation_lau(r: AmalgamResult, d: Derivation):
    """Split a derivation of a Lau product into (D1, D2, D4).

    D(a, b) = (D1 a + D2 b, D4 b) with D1 in Z^1(A, A*), D4 in Z^1(B, B*), and
    D2: B -> A* satisfying a.D2(b) = D2(b).a = phi(a) D2(b) and
    D2(bb') = (<b, D4 b'> + <b', D4 b>) phi.
    """
    if r.kind != "lau":
        raise DecompositionMismatch("not a Lau product")
    A, B = r.A, r.I_algebra
    if not is_square_dense(B):
        raise DecompositionMismatch("B^2 does not span B")
    phi = r.meta["phi"]
    n, m = A.dim, B.dim
    M = d.matrix
    D1, D2 = _block(M, 0, n, 0, n), _block(M, 0, n, n, n + m)
    D3, D4 = _block(M, n, n + m, 0, n), _block(M, n, n + m, n, n + m)
    if not D3.is_zero():
        raise DecompositionMismatch("the B* component of D(a, 0) is not zero")
    XA, XB = _dual(A), _dual(B)
    if not is_derivation(A, XA, D1):
        raise DecompositionMismatch("D1 is not a derivation of A")
    if not is_derivation(B, XB, D4):
        raise DecompositionMismatch("D4 is not a derivation of B")
    for s in range(m):
        f = D2.column(s)
        for i in range(n):
            ei = unit(n, i)
            target = tuple(phi[i] * x for x in f)
            if XA.act_left(ei, f) != target or XA.act_right(f, ei) != target:
                raise DecompositionMismatch(f"a.D2(b) = D2(b).a = phi(a)D2(b) fails at ({i}, {s})")
    for s in range(m):
        for t in range(m):
            lhs = D2.apply(B.table[s][t])
            coeff = D4.rows[s][t] + D4.rows[t][s]  # <e_s, D4 e_t> + <e_t, D4 e_s>
            if lhs != tuple(coeff * x for x in phi):
                raise DecompositionMismatch(f"D2(bb') condition fails at ({s}, {t})")
    e1, e2, e4 = Derivation(A, XA, D1), D2, Derivation(B, XB, D4)
    if is_inner(d) != (is_inner(e1) and D2.is_zero() and is_inner(e4)):
        raise DecompositionMismatch("innerness does not match the blocks")
    return e1, e2, e4


# ---------------------------------------------------------------------------
# statements about amalgams


def _quotient_basis(space: Subspace, sub: Subspace) -> list:
    """Vectors of ``space`` completing a basis of ``sub`` to one of ``space``."""
    ech = _Echelon(space.ambient_dim)
    for v in sub.basis:
        ech.insert(_sparse(v))
    out = []
    for v in space.basis:
        if ech.insert(_sparse(v)):
            out.append(v)
    return out


def h1_embedding_rank(targets: list, b1: Subspace) -> bool:
    """True when the target vectors stay linearly independent modulo ``b1``."""
    rows = [{j: x for j, x in enumerate(v) if x} for v in list(b1.basis) + list(targets)]
    return rank_sparse(rows, b1.ambient_dim) == b1.dim + len(targets)


def lift_is_injective_on_h1(r: AmalgamResult) -> bool:
    """Lifts of H^1(A, A*) representatives stay independent modulo B^1 of the amalgam."""
    A, C = r.A, r.algebra
    XA = _dual(A)
    reps = _quotient_basis(derivation_space(A, XA), inner_derivations(A, XA))
    lifted = []
    for v in reps:
        d = Derivation(A, XA, unflatten(v, A.dim, A.dim))
        lifted.append(lift_derivation(r, d).flat())
    return h1_embedding_rank(lifted, inner_derivations(C, _dual(C)))


def theorem_h1_doubling_check(A: FiniteAlgebra) -> bool:
    """dim H^1(A ⋈^id A, dual) == 2 dim H^1(A, A*) for square-dense A."""
    if not is_square_dense(A):
        raise HypothesisViolation("A^2 does not span A")
    r = id_amalgam(A)
    return h1_dual(r.algebra).h1_dim == 2 * h1_dual(A).h1_dim


def lau_embedding(r: AmalgamResult, D1: Matrix, D4: Matrix) -> Derivation:
    """(D1, D4) -> D(a, b) = (D1 a, D4 b)."""
    n, m = r.A.dim, r.I_algebra.dim
    rows = [tuple(D1.rows[q]) + (ZERO,) * m for q in range(n)]
    rows += [(ZERO,) * n + tuple(D4.rows[q]) for q in range(m)]
    return Derivation(r.algebra, _dual(r.algebra), Matrix(tuple(rows), n + m))


def theorem_embedding_lau_check(A: FiniteAlgebra, B: FiniteAlgebra, phi) -> bool:
    """h1(A ⊕_phi B) >= h1(A) + h1c(B), with the explicit embedding injective on cohomology."""
    r = lau_product(A, B, phi)
    C = r.algebra
    if h1_dual(C).h1_dim < h1_dual(A).h1_dim + h1c_dim(B):
        return False
    XA, XB, XC = _dual(A), _dual(B), _dual(C)
    reps_a = _quotient_basis(derivation_space(A, XA), inner_derivations(A, XA))
    zc = cyclic_derivations(B)
    reps_b = _quotient_basis(zc, zc & inner_derivations(B, XB))
    images = []
    zero_b = Matrix.zero(B.dim, B.dim)
    zero_a = Matrix.zero(A.dim, A.dim)
    for v in reps_a:
        images.append(lau_embedding(r, unflatten(v, A.dim, A.dim), zero_b))
    for v in reps_b:
        images.append(lau_embedding(r, zero_a, unflatten(v, B.dim, B.dim)))
    for d in images:
        if not is_derivation(C, XC, d.matrix):
            return False
    return h1_embedding_rank([d.flat() for d in images], inner_derivations(C, XC))


def weak_amenability_amalgam_checks(r: AmalgamResult) -> dict:
    """Status of each weak-amenability implication for the amalgam.

    Values are "pass", "fail" or "not-applicable".
    """
    wa_c = is_weakly_amenable(r.algebra)
    wa_a = is_weakly_amenable(r.A)
    wa_i = is_weakly_amenable(r.I_algebra)
    out = {}
    if is_commutative(r.algebra):
        out["commutative-iff"] = "pass" if wa_c == (wa_a and wa_i) else "fail"
    else:
        out["commutative-iff"] = "not-applicable"
    if wa_a and wa_i:
        out["sufficiency"] = "pass" if wa_c else "fail"
    else:
        out["sufficiency"] = "not-applicable"
    if r.kind == "id":
        out["id-iff"] = "pass" if wa_c == wa_a else "fail"
    else:
        out["id-iff"] = "not-applicable"
    if wa_c:
        out["necessity-A"] = "pass" if wa_a else "fail"
    else:
        out["necessity-A"] = "not-applicable"
    return out


def _independent_rank(columns: dict, nrows: int, ncols: int) -> int:
    """Rank by sympy's sparse QQ elimination, kept separate from the solver's own echelon code."""
    rows: dict = {}
    for j, col in columns.items():
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[j] = QQ(v.numerator, v.denominator)
    return DomainMatrix(rows, (nrows, ncols), QQ).rank()


@lru_cache(maxsize=256)
def derivation_dim_by_rank(a: FiniteAlgebra, x: Bimodule) -> int:
    """dim Z^1 as n*m minus the rank of the Leibniz operator, assembled column by column.

    Column (j, q) is the image of the elementary map E = x_q e_j^*, whose
    constraint entry at (i, k, s) is
    delta(s, q) c[i][k][j] - delta(k, j) L[i][q][s] - delta(i, j) R[q][k][s].
    """
    n, m = a.dim, x.dim
    if n == 0 or m == 0:
        return 0
    c, L, R = a.table, x.left, x.right
    cols = {}
    for j in range(n):
        for q in range(m):
            col: dict = {}
            for i in range(n):
                for k in range(n):
                    base = (i * n + k) * m
                    if c[i][k][j]:
                        col[base + q] = col.get(base + q, ZERO) + c[i][k][j]
                    if k == j:
                        for s_, v in enumerate(L[i][q]):
                            if v:
                                col[base + s_] = col.get(base + s_, ZERO) - v
                    if i == j:
                        for s_, v in enumerate(R[q][k]):
                            if v:
                                col[base + s_] = col.get(base + s_, ZERO) - v
            cols[j * m + q] = col
    return n * m - _independent_rank(cols, n * n * m, n * m)


@lru_cache(maxsize=256)
def inner_dim_by_rank(a: FiniteAlgebra, x: Bimodule) -> int:
    if a.dim == 0 or x.dim == 0:
        return 0
    cols = {}
    for p in range(x.dim):
        flat = flatten(inner_derivation_matrix(a, x, unit(x.dim, p)))
        cols[p] = dict(enumerate(flat))
    return _independent_rank(cols, a.dim * x.dim, x.dim)
