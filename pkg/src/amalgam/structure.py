"""Radical, characters and amenability.

The Jacobson radical is computed with the characteristic-zero trace form:
``x`` is radical iff ``tr(L_{xy}) = 0`` for every ``y`` in the unitization.
Characters are found on the commutative semisimple quotient
``A / (commutator ideal) / radical``, which is split into simple pieces by
factoring minimal polynomials of multiplication operators over Q.  Only
rational-valued characters are produced; a piece that is a proper number
field is reported as an obstruction instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    IdealEmbedding,
    Verdict,
    commutator_ideal,
    is_commutative,
    product_span,
    quotient,
    verify_ideal,
)
from .linalg import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    dot,
    null_space_sparse,
    solve_sparse,
    unit,
)

_X = sympy.Symbol("x")


class HypothesisViolation(AlgebraError):
    """A hypothesis of a structural statement fails for this instance."""


class IncompleteSpectrum(AlgebraError):
    pass


class CharacterInconsistency(AlgebraError):
    """The functional attached to (psi, i) depended on the choice of i."""


@dataclass(frozen=True)
class Character:
    algebra: FiniteAlgebra
    coords: tuple
    origin: str = ""

    @property
    def nonzero(self) -> bool:
        return any(self.coords)

    def __call__(self, v) -> object:
        return dot(self.coords, v)


@dataclass(frozen=True)
class SpectrumReport:
    characters: tuple
    complete: bool
    obstruction: Optional[str] = None

    def coord_set(self) -> frozenset:
        return frozenset(c.coords for c in self.characters)

    def to_json(self) -> dict:
        out = {
            "characters": [[str(x) for x in c.coords] for c in self.characters],
            "complete": self.complete,
        }
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out


def is_multiplicative(a: FiniteAlgebra, f) -> bool:
    for i in range(a.dim):
        for j in range(a.dim):
            if dot(f, a.table[i][j]) != f[i] * f[j]:
                return False
    return True


# ---------------------------------------------------------------------------
# radical


def trace_vector(a: FiniteAlgebra) -> tuple:
    """t with tr(L_z) = <t, z>: t_i = sum_j c[i][j][j]."""
    return tuple(sum((a.table[i][j][j] for j in range(a.dim)), ZERO) for i in range(a.dim))


def _trace_form_radical(a: FiniteAlgebra) -> Subspace:
    n = a.dim
    t = trace_vector(a)
    rows = [{i: t[i] for i in range(n) if t[i]}]
    for y in range(n):
        row = {}
        for i in range(n):
            v = dot(t, a.table[i][y])
            if v:
                row[i] = v
        rows.append(row)
    return null_space_sparse(rows, n)


def nilpotency_index(a: FiniteAlgebra, sub: Subspace) -> Optional[int]:
    """Smallest k with sub^k = 0, or None if the powers stabilise at a nonzero space."""
    power, k = sub, 1
    while power.dim:
        nxt = product_span(a, power, sub)
        if nxt == power:
            return None
        power, k = nxt, k + 1
    return k


def radical(a: FiniteAlgebra, verify: bool = True) -> Subspace:
    """Jacobson radical of ``a``.

    With ``verify`` the result is checked to be a nilpotent two-sided ideal
    whose quotient has zero radical.
    """
    rad = _trace_form_radical(a)
    if verify:
        if not verify_ideal(IdealEmbedding(a, rad)):
            raise AlgebraError("trace-form radical is not an ideal")
        if nilpotency_index(a, rad) is None:
            raise AlgebraError("trace-form radical is not nilpotent")
        q, _ = quotient(a, rad)
        if _trace_form_radical(q).dim:
            raise AlgebraError("quotient by the trace-form radical is not semisimple")
    return rad


def is_semisimple(a: FiniteAlgebra) -> bool:
    return radical(a).dim == 0


# ---------------------------------------------------------------------------
# characters


def minimal_polynomial(m: Matrix) -> sympy.Poly:
    """Monic minimal polynomial of a square matrix, by Krylov dependence of its powers."""
    n = m.nrows
    powers = [Matrix.identity(n).flat()]
    current = Matrix.identity(n)
    while True:
        current = current @ m
        target = current.flat()
        k = len(powers)
        rows = []
        for e in range(n * n):
            row = {s: powers[s][e] for s in range(k) if powers[s][e]}
            if target[e]:
                row[k] = target[e]
            rows.append(row)
        c = solve_sparse(rows, k)
        if c is not None:
            coeffs = [ONE] + [-c[s] for s in reversed(range(k))]
            return sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in coeffs], _X, domain="QQ")
        powers.append(target)


def _restricted(a: FiniteAlgebra, b, V: Subspace) -> Matrix:
    """Matrix of y -> b y on the (invariant) subspace V, in V's echelon basis."""
    cols = [V.coordinates(a.mul(b, v)) for v in V.basis]
    return Matrix.from_columns(cols, V.dim)


def _poly_at_matrix(p: sympy.Poly, m: Matrix) -> Matrix:
    n = m.nrows
    out = Matrix.zero(n, n)
    for c in p.all_coeffs():
        out = out @ m + Matrix.identity(n).scaled(Fraction(int(c.p), int(c.q)))
    return out


def _split_components(S: FiniteAlgebra):
    """Decompose a commutative semisimple algebra into ideals.

    Returns ``(rational, obstruction)``: ``rational`` is a list of 1-dim
    ideals, ``obstruction`` names the first irreducible factor of degree > 1
    met on a piece that cannot be split further.
    """
    work = [Subspace.full(S.dim)] if S.dim else []
    rational, obstruction = [], None
    while work:
        V = work.pop()
        split = False
        stuck = None
        for k in range(S.dim):
            b = unit(S.dim, k)
            M = _restricted(S, b, V)
            mp = minimal_polynomial(M)
            _, factors = sympy.factor_list(mp.as_expr(), _X)
            if any(e > 1 for _, e in factors):
                raise AlgebraError("minimal polynomial is not squarefree on a semisimple algebra")
            polys = [sympy.Poly(f, _X, domain="QQ") for f, _ in factors if sympy.Poly(f, _X).degree() > 0]
            if len(polys) > 1:
                for f in polys:
                    K = _poly_at_matrix(f, M)
                    ker = null_space_sparse(({j: x for j, x in enumerate(r) if x} for r in K.rows), V.dim)
                    work.append(Subspace.span([V.element(c) for c in ker.basis], S.dim))
                split = True
                break
            if polys and polys[0].degree() > 1 and stuck is None:
                stuck = (polys[0], S.labels[k])
        if split:
            continue
        if stuck is None:
            if V.dim != 1:
                raise AlgebraError("scalar piece of dimension > 1")
            rational.append(V)
        elif obstruction is None:
            poly, label = stuck
            obstruction = f"{poly.as_expr()} irreducible over Q (minimal polynomial of multiplication by {label})"
    return rational, obstruction


def characters(a: FiniteAlgebra) -> SpectrumReport:
    """All nonzero rational-valued characters of ``a``.

    ``complete`` is False when the commutative semisimple quotient has a
    factor that is not Q; the obstruction names the irreducible polynomial.
    """
    C = commutator_ideal(a)
    q1, p1 = quotient(a, C)
    R = radical(q1)
    S, p2 = quotient(q1, R)
    pieces, obstruction = _split_components(S)
    chars = []
    for V in pieces:
        e = V.basis[0]
        # on the 1-dim ideal V = Q e every b acts by the scalar chi(b)
        vals = []
        for k in range(S.dim):
            be = S.mul(unit(S.dim, k), e)
            vals.append(V.coordinates(be)[0])
        chi_S = tuple(vals)
        coords = tuple(dot(chi_S, p2(p1(unit(a.dim, j)))) for j in range(a.dim))
        if not any(coords) or not is_multiplicative(a, coords):
            raise AlgebraError("constructed functional is not a character")
        chars.append(Character(a, coords))
    chars.sort(key=lambda c: c.coords)
    return SpectrumReport(tuple(chars), obstruction is None, obstruction)


def radical_by_characters(a: FiniteAlgebra) -> Subspace:
    """Intersection of the kernels of all rational characters."""
    rows = ({j: x for j, x in enumerate(c.coords) if x} for c in characters(a).characters)
    return null_space_sparse(rows, a.dim)


# ---------------------------------------------------------------------------
# characters of an amalgam


def _span_theta_I(r, both_sides: bool) -> Subspace:
    B, I = r.B, r.ideal.subspace
    thetaA = Subspace.span(r.theta.matrix.columns(), B.dim)
    s = product_span(B, thetaA, I)
    if both_sides:
        s = s + product_span(B, I, thetaA)
    return s


def amalgam_characters(r) -> SpectrumReport:
    """Characters of the amalgam assembled from those of A and I.

    F = {(phi, 0)} for phi in sigma(A); E = {((i.psi) o theta, psi)} for psi in
    sigma(I), with any i satisfying psi(i) = 1.  Requires sigma(A) nonempty and
    theta(A)I + I theta(A) spanning I.
    """
    sa = characters(r.A)
    si = characters(r.I_algebra)
    if not sa.complete or not si.complete:
        raise IncompleteSpectrum(sa.obstruction or si.obstruction)
    if not sa.characters:
        raise HypothesisViolation("sigma(A) is empty")
    if _span_theta_I(r, True) != r.ideal.subspace:
        raise HypothesisViolation("theta(A)I and I theta(A) do not span I")
    B = r.B
    out = [Character(r.algebra, phi.coords + (ZERO,) * r.n_I, "F") for phi in sa.characters]
    for psi in si.characters:
        candidates = []
        for s, val in enumerate(psi.coords):
            if not val:
                continue
            i_b = tuple(x / val for x in r.ideal.subspace.basis[s])
            phi = tuple(dot(psi.coords, r.B_to_i(B.mul(r.theta(unit(r.n_A, j)), i_b))) for j in range(r.n_A))
            candidates.append(phi)
        if any(c != candidates[0] for c in candidates):
            raise CharacterInconsistency(f"(i.psi) o theta depends on i for psi = {psi.coords}")
        out.append(Character(r.algebra, candidates[0] + psi.coords, "E"))
    for ch in out:
        if not is_multiplicative(r.algebra, ch.coords):
            raise AlgebraError(f"E/F functional {ch.coords} is not multiplicative")
    return SpectrumReport(tuple(out), True, None)


def radical_decomposition_check(r) -> bool:
    """rad(A ⋈ I) == rad A (+) rad I for commutative amalgams with span(theta(A) I) = I."""
    if not is_commutative(r.algebra):
        raise HypothesisViolation("amalgam is not commutative")
    sa = characters(r.A)
    if not sa.characters:
        raise HypothesisViolation("sigma(A) is empty" if sa.complete else f"sigma(A) unknown: {sa.obstruction}")
    if _span_theta_I(r, False) != r.ideal.subspace:
        raise HypothesisViolation("theta(A)I does not span I")
    whole = radical(r.algebra)
    parts = Subspace.span(
        [r.embed_A(v) for v in radical(r.A).basis] + [r.embed_I(v) for v in radical(r.I_algebra).basis],
        r.algebra.dim,
    )
    return whole == parts


# ---------------------------------------------------------------------------
# amenability


def has_diagonal(a: FiniteAlgebra) -> Optional[tuple]:
    """A diagonal M = sum M[p][q] e_p (x) e_q, or None.

    Solves x.M = M.x and pi(M) x = x for all basis x.  A solution of the
    second family forces pi(M) to act as a left identity, so algebras
    without identity come out non-amenable, as they must in finite
    dimension.
    """
    n = a.dim
    N = n * n
    c = a.table
    idx = lambda p, q: p * n + q  # noqa: E731
    rows = []
    for x in range(n):
        # (e_x M)[s][t] = sum_p M[p][t] c[x][p][s];  (M e_x)[s][t] = sum_q M[s][q] c[q][x][t]
        for s in range(n):
            for t in range(n):
                row = {}
                for p in range(n):
                    v = c[x][p][s]
                    if v:
                        row[idx(p, t)] = row.get(idx(p, t), ZERO) + v
                for q in range(n):
                    v = c[q][x][t]
                    if v:
                        row[idx(s, q)] = row.get(idx(s, q), ZERO) - v
                rows.append({k: v for k, v in row.items() if v})
        # pi(M) e_x = e_x
        for s in range(n):
            row = {}
            for p in range(n):
                for q in range(n):
                    v = sum((c[p][q][k] * c[k][x][s] for k in range(n)), ZERO)
                    if v:
                        row[idx(p, q)] = v
            if s == x:
                row[N] = ONE
            rows.append(row)
    sol = solve_sparse(rows, N)
    if sol is None:
        return None
    return tuple(tuple(sol[idx(p, q)] for q in range(n)) for p in range(n))


def is_diagonal(a: FiniteAlgebra, M) -> bool:
    """Check the two defining equations for a candidate diagonal."""
    n = a.dim
    for x in range(n):
        ex = unit(n, x)
        left = [[ZERO] * n for _ in range(n)]
        right = [[ZERO] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                m = M[p][q]
                if not m:
                    continue
                xp = a.mul(ex, unit(n, p))
                qx = a.mul(unit(n, q), ex)
                for s in range(n):
                    left[s][q] += m * xp[s]
                    right[p][s] += m * qx[s]
        if left != right:
            return False
        pi = [ZERO] * n
        for p in range(n):
            for q in range(n):
                if M[p][q]:
                    pi = [u + M[p][q] * v for u, v in zip(pi, a.table[p][q])]
        if a.mul(tuple(pi), ex) != ex:
            return False
    return True


def is_amenable(a: FiniteAlgebra) -> bool:
    return has_diagonal(a) is not None


def amenability_amalgam_check(r):
    """Amenability of the amalgam against amenability of A and I."""
    whole = is_amenable(r.algebra)
    parts = is_amenable(r.A) and is_amenable(r.I_algebra)
    return Verdict(whole == parts, (whole, parts))
