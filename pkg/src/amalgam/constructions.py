"""Amalgamation of A with B along an ideal I, and its classical special cases.

For a homomorphism ``theta: A -> B`` and a two-sided ideal ``I`` of ``B`` the
amalgam is ``A (+) I`` with

    (a, i)(a', i') = (a a', theta(a) i' + i theta(a') + i i').

The I-block uses the echelon basis of ``I`` inside ``B``.  Result labels are
``"A:<label>"`` followed by ``"I:<label>"``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    AlgebraError,
    AlgebraMap,
    FiniteAlgebra,
    IdealEmbedding,
    Verdict,
    annihilator_in_ideal,
    find_identity,
    identity_map,
    is_commutative,
    make_algebra,
    make_ideal,
    make_map,
    operator_norm_bound,
    quotient,
    subalgebra,
    subspace_is_commutative,
    verify_homomorphism,
    zero_map,
)
from .duality import Bimodule
from .linalg import ONE, ZERO, Matrix, Subspace, rank, solve, solve_sparse, unit, vec

log = logging.getLogger(__name__)


class UncertifiedMap(AlgebraError):
    pass


class UncertifiedIdeal(AlgebraError):
    pass


class NotACharacter(AlgebraError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConstructionMismatch(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class AmalgamResult:
    algebra: FiniteAlgebra
    A: FiniteAlgebra
    B: FiniteAlgebra
    theta: AlgebraMap
    ideal: IdealEmbedding  # I inside B
    I_algebra: FiniteAlgebra  # I on its echelon basis
    embed_A: AlgebraMap
    embed_I: AlgebraMap
    project_A: AlgebraMap
    ideal_I_in_result: IdealEmbedding
    kind: str = "amalgam"
    meta: dict = field(default_factory=dict)
    warnings: tuple = ()

    @property
    def n_A(self) -> int:
        return self.A.dim

    @property
    def n_I(self) -> int:
        return self.I_algebra.dim

    def split(self, v):
        """Split amalgam coordinates into (A-part, I-part)."""
        return tuple(v[: self.n_A]), tuple(v[self.n_A :])

    def join(self, a, i) -> tuple:
        return tuple(a) + tuple(i)

    def i_to_B(self, i) -> tuple:
        """I-block coordinates as a vector of B."""
        return self.ideal.subspace.element(i)

    def B_to_i(self, b) -> tuple:
        coords = self.ideal.subspace.coordinates(b)
        if coords is None:
            raise ConstructionMismatch("vector does not lie in the ideal")
        return coords


def amalgamate(
    A: FiniteAlgebra,
    B: FiniteAlgebra,
    theta: AlgebraMap,
    I: IdealEmbedding,
    kind: str = "amalgam",
    meta: Optional[dict] = None,
) -> AmalgamResult:
    """Build ``A ⋈^theta I`` with its embeddings and the projection onto A."""
    if theta.domain != A or theta.codomain != B:
        raise ConstructionMismatch("theta must map A into B")
    if I.ambient != B:
        raise ConstructionMismatch("I must be an ideal of B")
    if not theta.multiplicative:
        raise UncertifiedMap(f"theta is not multiplicative (witness {verify_homomorphism(theta).witness})")
    if not I.two_sided:
        raise UncertifiedIdeal("I is not a two-sided ideal of B")

    sub = I.subspace
    n, m = A.dim, sub.dim
    images = theta.matrix.columns()

    def in_I(v):
        return sub.coordinates(v)

    table = []
    for p in range(n):
        row = []
        for q in range(n):
            row.append(tuple(A.table[p][q]) + (ZERO,) * m)
        for t in range(m):
            row.append((ZERO,) * n + in_I(B.mul(images[p], sub.basis[t])))
        table.append(row)
    for s in range(m):
        row = []
        for q in range(n):
            row.append((ZERO,) * n + in_I(B.mul(sub.basis[s], images[q])))
        for t in range(m):
            row.append((ZERO,) * n + in_I(B.mul(sub.basis[s], sub.basis[t])))
        table.append(row)

    I_alg = subalgebra(B, sub)
    labels = [f"A:{s}" for s in A.labels] + [f"I:{s}" for s in I_alg.labels]
    weights = list(A.weights) + list(I_alg.weights)
    C = make_algebra(n + m, labels, table, weights)

    embed_A = make_map(A, C, Matrix.from_columns([unit(n + m, p) for p in range(n)], n + m))
    embed_I = make_map(I_alg, C, Matrix.from_columns([unit(n + m, n + t) for t in range(m)], n + m))
    project_A = make_map(C, A, Matrix.from_rows([unit(n + m, p) for p in range(n)], n + m))
    ideal_in_C = make_ideal(C, [unit(n + m, n + t) for t in range(m)])

    warnings = []
    norm = operator_norm_bound(theta)
    if norm > 1:
        msg = f"theta has operator norm {norm} > 1"
        log.warning(msg)
        warnings.append(msg)

    return AmalgamResult(
        algebra=C,
        A=A,
        B=B,
        theta=theta,
        ideal=I,
        I_algebra=I_alg,
        embed_A=embed_A,
        embed_I=embed_I,
        project_A=project_A,
        ideal_I_in_result=ideal_in_C,
        kind=kind,
        meta=dict(meta or {}),
        warnings=tuple(warnings),
    )


def amalgam_product_direct(r: AmalgamResult, x, y) -> tuple:
    """Evaluate ``(aa', theta(a)i' + i theta(a') + ii')`` term by term.

    Independent of the stored table: products are taken in A and B and the
    I-part is recovered by solving against the ideal basis.
    """
    a, i = r.split(x)
    a2, i2 = r.split(y)
    B = r.B
    i_b, i2_b = r.i_to_B(i), r.i_to_B(i2)
    ta, ta2 = r.theta(a), r.theta(a2)
    terms = [B.mul(ta, i2_b), B.mul(i_b, ta2), B.mul(i_b, i2_b)]
    total = tuple(sum(col, ZERO) for col in zip(*terms)) if B.dim else ()
    basis = Matrix.from_columns(r.ideal.subspace.basis, B.dim) if r.n_I else Matrix.zero(B.dim, 0)
    i_part = solve(basis, total)
    if i_part is None:
        raise ConstructionMismatch("I-component of the product left the ideal")
    return tuple(r.A.mul(a, a2)) + tuple(i_part)


# ---------------------------------------------------------------------------
# special cases


def unitization_algebra(A: FiniteAlgebra) -> FiniteAlgebra:
    """``A# = Q (+) A`` with the adjoined unit as basis vector 0."""
    n = A.dim
    unit_label = "1"
    while unit_label in A.labels:
        unit_label = "#" + unit_label
    table = [[[ZERO] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    table[0][0][0] = ONE
    for k in range(n):
        table[0][k + 1][k + 1] = ONE
        table[k + 1][0][k + 1] = ONE
        for j in range(n):
            for t, c in enumerate(A.table[k][j]):
                table[k + 1][j + 1][t + 1] = c
    return make_algebra(n + 1, [unit_label] + list(A.labels), table, [ONE] + list(A.weights))


def _rationals() -> FiniteAlgebra:
    return make_algebra(1, ["u"], [[[1]]])


def unitize(A: FiniteAlgebra) -> AmalgamResult:
    """Unitization as the amalgam of Q with A# along A, theta(t) = (t, 0)."""
    Q = _rationals()
    Ah = unitization_algebra(A)
    theta = make_map(Q, Ah, Matrix.from_columns([unit(A.dim + 1, 0)], A.dim + 1))
    I = make_ideal(Ah, [unit(A.dim + 1, k + 1) for k in range(A.dim)])
    return amalgamate(Q, Ah, theta, I, kind="unitize")


def cartesian(A: FiniteAlgebra, B: FiniteAlgebra) -> AmalgamResult:
    """theta = 0 and I = B: the coordinatewise product A x B."""
    I = make_ideal(B, Subspace.full(B.dim))
    return amalgamate(A, B, zero_map(A, B), I, kind="cartesian")


def id_amalgam(A: FiniteAlgebra) -> AmalgamResult:
    """``A ⋈^id A``."""
    return amalgamate(A, A, identity_map(A), make_ideal(A, Subspace.full(A.dim)), kind="id")


def module_extension(A: FiniteAlgebra, X: Bimodule) -> AmalgamResult:
    """``A (+) X`` with X^2 = 0, realised as the amalgam of A with S = A (+) X along X."""
    if X.algebra != A:
        raise ConstructionMismatch("bimodule is over a different algebra")
    if not X.certified:
        raise UncertifiedIdeal("X is not a certified A-bimodule")
    n, d = A.dim, X.dim
    N = n + d
    table = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(A.table[i][j]):
                table[i][j][k] = c
        for p in range(d):
            for q in range(d):
                table[i][n + p][n + q] = X.left[i][p][q]
                table[n + p][i][n + q] = X.right[p][i][q]
    labels = list(A.labels) + [s if s not in A.labels else f"X:{s}" for s in X.labels]
    S = make_algebra(N, labels, table, list(A.weights) + list(X.weights))
    theta = make_map(A, S, Matrix.from_columns([unit(N, i) for i in range(n)], N))
    I = make_ideal(S, [unit(N, n + p) for p in range(d)])
    return amalgamate(A, S, theta, I, kind="module-ext")


def verify_character(A: FiniteAlgebra, phi) -> Verdict:
    """Nonzero and multiplicative on basis pairs; the witness is the failing pair or "zero"."""
    phi = vec(phi)
    if len(phi) != A.dim:
        raise ConstructionMismatch(f"functional of length {len(phi)} on an algebra of dimension {A.dim}")
    if not any(phi):
        return Verdict(False, "zero")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = sum((phi[k] * c for k, c in enumerate(A.table[i][j])), ZERO)
            if lhs != phi[i] * phi[j]:
                return Verdict(False, (i, j))
    return Verdict(True)


def lau_product(A: FiniteAlgebra, B: FiniteAlgebra, phi) -> AmalgamResult:
    """phi-Lau product: the amalgam of A with B# along B, theta(a) = (phi(a), 0)."""
    phi = vec(phi)
    ok = verify_character(A, phi)
    if not ok:
        if ok.witness == "zero":
            raise NotACharacter("phi is the zero functional", ok.witness)
        i, j = ok.witness
        raise NotACharacter(
            f"phi(e_i e_j) != phi(e_i) phi(e_j) for (i, j) = ({A.labels[i]}, {A.labels[j]})", ok.witness
        )
    Bh = unitization_algebra(B)
    m = B.dim
    theta = make_map(A, Bh, Matrix.from_columns([(phi[j],) + (ZERO,) * m for j in range(A.dim)], m + 1))
    I = make_ideal(Bh, [unit(m + 1, k + 1) for k in range(m)])
    return amalgamate(A, Bh, theta, I, kind="lau", meta={"phi": phi, "B_factor": B})


def semidirect_product(B: FiniteAlgebra, A_sub: Subspace, I: IdealEmbedding) -> AmalgamResult:
    """Semidirect product of a subalgebra with an ideal via the inclusion."""
    A = subalgebra(B, A_sub)
    incl = make_map(A, B, Matrix.from_columns(A_sub.basis, B.dim))
    return amalgamate(A, B, incl, I, kind="semidirect")


# ---------------------------------------------------------------------------
# characterisations


def identity_by_characterization(r: AmalgamResult):
    """Identity of the amalgam predicted from A, theta and I alone.

    Returns amalgam coordinates, or ``None`` when the characterisation says
    there is no identity.
    """
    one = find_identity(r.A)
    if one is None:
        return None
    B = r.B
    ann = annihilator_in_ideal(r.theta, r.ideal)
    t1 = r.theta(one.coords)
    S = Subspace.span(list(r.theta.matrix.columns()) + list(r.ideal.subspace.basis), B.dim)
    k = ann.dim
    # unknown i = sum_s t_s ann_s with (theta(1) + i) y = y = y (theta(1) + i) on S
    eqs = []
    for y in S.basis:
        base_l, base_r = B.mul(t1, y), B.mul(y, t1)
        cols_l = [B.mul(w, y) for w in ann.basis]
        cols_r = [B.mul(y, w) for w in ann.basis]
        for q in range(B.dim):
            for base, cols in ((base_l, cols_l), (base_r, cols_r)):
                row = {s: cols[s][q] for s in range(k) if cols[s][q]}
                rhs = y[q] - base[q]
                if rhs:
                    row[k] = rhs
                eqs.append(row)

    t = solve_sparse(eqs, k)
    if t is None:
        return None
    i_vec = ann.element(t) if k else (ZERO,) * B.dim
    if B.mul(i_vec, i_vec) != tuple(i_vec):
        return None
    return tuple(one.coords) + r.B_to_i(i_vec)


def verify_identity_characterization(r: AmalgamResult) -> Verdict:
    e = find_identity(r.algebra)
    predicted = identity_by_characterization(r)
    found = None if e is None else e.coords
    return Verdict(found == predicted, (found, predicted))


def verify_commutativity_characterization(r: AmalgamResult) -> Verdict:
    lhs = bool(is_commutative(r.algebra))
    S = Subspace.span(list(r.theta.matrix.columns()) + list(r.ideal.subspace.basis), r.B.dim)
    rhs = bool(is_commutative(r.A)) and bool(subspace_is_commutative(r.B, S))
    return Verdict(lhs == rhs, (lhs, rhs))


def quotient_by_I(r: AmalgamResult):
    """The quotient of the amalgam by I and a certified isomorphism onto A."""
    q, proj = quotient(r.algebra, r.ideal_I_in_result.subspace)
    pivots = set(r.ideal_I_in_result.subspace.pivots)
    keep = [k for k in range(r.algebra.dim) if k not in pivots]
    cols = [r.project_A(unit(r.algebra.dim, k)) for k in keep]
    iso = make_map(q, r.A, Matrix.from_columns(cols, r.A.dim))
    if not iso.multiplicative or q.dim != r.A.dim or rank(iso.matrix) != q.dim:
        raise ConstructionMismatch("quotient by I is not isomorphic to A via the projection")
    return q, iso
