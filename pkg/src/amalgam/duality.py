"""Dual spaces, bimodules, adjoints and the two Arens products.

Functionals and bidual elements are coordinate tuples on the dual and double
dual bases.  In finite dimension the bidual is the algebra itself, but the
Arens products below are computed by the three dualisation steps

    <G.f, a> = <G, f.a>,   <F box G, f> = <F, G.f>
    <f.F, a> = <F, a.f>,   <F dia G, f> = <G, f.F>

rather than through that identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .algebra import AlgebraError, AlgebraMap, FiniteAlgebra, Verdict
from .linalg import ZERO, Matrix, Subspace, dot, null_space_sparse, unit, vec

if TYPE_CHECKING:
    from .constructions import AmalgamResult


class ArensIrregularity(AlgebraError):
    """A topological centre came out smaller than the whole bidual."""


@dataclass(frozen=True)
class Bimodule:
    """A-bimodule X with e_i . x_p = sum_q left[i][p][q] x_q and x_p . e_i = sum_q right[p][i][q] x_q."""

    algebra: FiniteAlgebra
    dim: int
    left: tuple
    right: tuple
    labels: tuple
    weights: tuple
    certified: bool = False

    def act_left(self, a: Sequence, x: Sequence) -> tuple:
        out = [ZERO] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            li = self.left[i]
            for p, xp in enumerate(x):
                if not xp:
                    continue
                c = ai * xp
                for q, v in enumerate(li[p]):
                    if v:
                        out[q] += c * v
        return tuple(out)

    def act_right(self, x: Sequence, a: Sequence) -> tuple:
        out = [ZERO] * self.dim
        for p, xp in enumerate(x):
            if not xp:
                continue
            rp = self.right[p]
            for i, ai in enumerate(a):
                if not ai:
                    continue
                c = ai * xp
                for q, v in enumerate(rp[i]):
                    if v:
                        out[q] += c * v
        return tuple(out)


def verify_bimodule(x: Bimodule) -> Verdict:
    """Check (ab)x = a(bx), x(ab) = (xa)b and (ax)b = a(xb) on basis triples."""
    A = x.algebra
    n, m = A.dim, x.dim
    for i in range(n):
        ei = unit(n, i)
        for j in range(n):
            ej = unit(n, j)
            eij = A.table[i][j]
            for p in range(m):
                xp = unit(m, p)
                if x.act_left(eij, xp) != x.act_left(ei, x.act_left(ej, xp)):
                    return Verdict(False, ("left", i, j, p))
                if x.act_right(xp, eij) != x.act_right(x.act_right(xp, ei), ej):
                    return Verdict(False, ("right", i, j, p))
                if x.act_right(x.act_left(ei, xp), ej) != x.act_left(ei, x.act_right(xp, ej)):
                    return Verdict(False, ("middle", i, j, p))
    return Verdict(True)


def make_bimodule(algebra: FiniteAlgebra, dim: int, left, right, labels=None, weights=None) -> Bimodule:
    n = algebra.dim
    left = tuple(tuple(vec(left[i][p]) for p in range(dim)) for i in range(n))
    right = tuple(tuple(vec(right[p][i]) for i in range(n)) for p in range(dim))
    labels = tuple(f"x{p}" for p in range(dim)) if labels is None else tuple(labels)
    weights = (Fraction(1),) * dim if weights is None else vec(weights)
    x = Bimodule(algebra, dim, left, right, labels, weights)
    return Bimodule(algebra, dim, left, right, labels, weights, bool(verify_bimodule(x)))


def regular_bimodule(a: FiniteAlgebra) -> Bimodule:
    n = a.dim
    left = [[a.table[i][p] for p in range(n)] for i in range(n)]
    right = [[a.table[p][i] for i in range(n)] for p in range(n)]
    return make_bimodule(a, n, left, right, a.labels, a.weights)


def zero_bimodule(a: FiniteAlgebra, dim: int = 0) -> Bimodule:
    z = [[[0] * dim for _ in range(dim)] for _ in range(a.dim)]
    zr = [[[0] * dim for _ in range(a.dim)] for _ in range(dim)]
    return make_bimodule(a, dim, z, zr)


@lru_cache(maxsize=512)
def dual_bimodule(a: FiniteAlgebra) -> Bimodule:
    """A* with <a.f, b> = <f, ba> and <f.a, b> = <f, ab>, on the dual basis."""
    n = a.dim
    c = a.table
    # e_i . d_p evaluated at e_q is d_p(e_q e_i) = c[q][i][p]
    left = [[[c[q][i][p] for q in range(n)] for p in range(n)] for i in range(n)]
    right = [[[c[i][q][p] for q in range(n)] for i in range(n)] for p in range(n)]
    labels = [f"d({s})" for s in a.labels]
    weights = [1 / w for w in a.weights]
    return make_bimodule(a, n, left, right, labels, weights)


def adjoint(m: AlgebraMap) -> Matrix:
    """Matrix of ``m*`` on dual bases: <m*(g), a> = <g, m(a)>."""
    return m.matrix.T


def pairing(f: Sequence, x: Sequence) -> Fraction:
    return dot(f, x)


def amalgam_dual_pairing(r: "AmalgamResult", x: Sequence, f: Sequence, g: Sequence) -> Fraction:
    """<(a, i), (f, g)> = f(a) + g(i)."""
    a, i = r.split(vec(x))
    if len(f) != len(a) or len(g) != len(i):
        raise AlgebraError("functional pair does not match the amalgam blocks")
    return dot(f, a) + dot(g, i)


def dual_norm(a: FiniteAlgebra, f: Sequence) -> Fraction:
    """Exact dual of the weighted l1 norm: ``max_k |f_k| / w_k``."""
    if len(f) != a.dim:
        raise AlgebraError("functional length does not match the algebra")
    return max((abs(Fraction(x)) / w for x, w in zip(f, a.weights)), default=ZERO)


def dual_norm_by_enumeration(a: FiniteAlgebra, f: Sequence) -> Fraction:
    """Max of |<f, x>| over the extreme points ±e_k / w_k of the unit ball."""
    best = ZERO
    for k in range(a.dim):
        x = tuple(v / a.weights[k] for v in unit(a.dim, k))
        best = max(best, abs(dot(f, x)))
    return best


# ---------------------------------------------------------------------------
# closed forms of the dual actions on an amalgam


def _g_dot_i(r: "AmalgamResult", g, i_b):
    """g.i as a functional on B: <x, g.i> = g(i x)."""
    B = r.B
    return tuple(dot(g, r.B_to_i(B.mul(i_b, unit(B.dim, k)))) for k in range(B.dim))


def _i_dot_g(r: "AmalgamResult", g, i_b):
    """i.g as a functional on B: <x, i.g> = g(x i)."""
    B = r.B
    return tuple(dot(g, r.B_to_i(B.mul(unit(B.dim, k), i_b))) for k in range(B.dim))


def amalgam_right_action_closed(r: "AmalgamResult", f, g, x) -> tuple:
    """(f, g).(a, i) = (f.a + theta*(g.i), g.(theta(a) + i))."""
    A, B = r.A, r.B
    a, i = r.split(x)
    i_b = r.i_to_B(i)
    XA = dual_bimodule(A)
    first = XA.act_right(f, a)
    theta_star = adjoint(r.theta)
    first = tuple(u + v for u, v in zip(first, theta_star.apply(_g_dot_i(r, g, i_b))))
    s = tuple(u + v for u, v in zip(r.theta(a), i_b))
    second = tuple(dot(g, r.B_to_i(B.mul(s, v))) for v in r.ideal.subspace.basis)
    return first + second


def amalgam_left_action_closed(r: "AmalgamResult", f, g, x) -> tuple:
    """(a, i).(f, g) = (a.f + theta*(i.g), (theta(a) + i).g)."""
    A, B = r.A, r.B
    a, i = r.split(x)
    i_b = r.i_to_B(i)
    XA = dual_bimodule(A)
    first = XA.act_left(a, f)
    theta_star = adjoint(r.theta)
    first = tuple(u + v for u, v in zip(first, theta_star.apply(_i_dot_g(r, g, i_b))))
    s = tuple(u + v for u, v in zip(r.theta(a), i_b))
    second = tuple(dot(g, r.B_to_i(B.mul(v, s))) for v in r.ideal.subspace.basis)
    return first + second


def amalgam_dual_actions_check(r: "AmalgamResult") -> Verdict:
    """Generic dual actions of the amalgam against the closed forms, on all basis pairs.

    The witness is ``(side, basis element, dual basis element)``.
    """
    C = r.algebra
    N = C.dim
    X = dual_bimodule(C)
    for k in range(N):
        x = unit(N, k)
        for p in range(N):
            fg = unit(N, p)
            f, g = fg[: r.n_A], fg[r.n_A :]
            if X.act_right(fg, x) != amalgam_right_action_closed(r, f, g, x):
                return Verdict(False, ("right", k, p))
            if X.act_left(x, fg) != amalgam_left_action_closed(r, f, g, x):
                return Verdict(False, ("left", k, p))
    return Verdict(True)


# ---------------------------------------------------------------------------
# Arens products


def _bidual_right_on_dual(X: Bimodule, G, f):
    """G.f in A*: <G.f, a> = <G, f.a>."""
    n = X.algebra.dim
    return tuple(dot(G, X.act_right(f, unit(n, a))) for a in range(n))


def _dual_left_on_bidual(X: Bimodule, f, F):
    """f.F in A*: <f.F, a> = <F, a.f>."""
    n = X.algebra.dim
    return tuple(dot(F, X.act_left(unit(n, a), f)) for a in range(n))


def arens_products(a: FiniteAlgebra, F: Sequence, G: Sequence, X: Bimodule = None):
    """First and second Arens products of two bidual elements, by literal dualisation."""
    n = a.dim
    X = X or dual_bimodule(a)
    F, G = vec(F), vec(G)
    first, second = [], []
    for p in range(n):
        f = unit(n, p)
        first.append(dot(F, _bidual_right_on_dual(X, G, f)))
        second.append(dot(G, _dual_left_on_bidual(X, f, F)))
    return tuple(first), tuple(second)


def arens_first_bilinear(tensor, du: int, dv: int, dw: int, x: Sequence, y: Sequence) -> tuple:
    """First Arens extension m*** of a bilinear map m: U x V -> W given by tensor[u][v][w]."""

    def m_star(omega, u):  # in V*
        return tuple(sum((omega[w] * tensor[u][v][w] for w in range(dw)), ZERO) for v in range(dv))

    def m_2star(vpp, omega):  # in U*
        return tuple(dot(vpp, m_star(omega, u)) for u in range(du))

    return tuple(dot(x, m_2star(y, unit(dw, w))) for w in range(dw))


def arens_second_bilinear(tensor, du: int, dv: int, dw: int, x: Sequence, y: Sequence) -> tuple:
    """Second Arens extension: the first extension of the flipped map, flipped back."""
    flipped = [[tensor[u][v] for u in range(du)] for v in range(dv)]
    return arens_first_bilinear(flipped, dv, du, dw, y, x)


def topological_centres(a: FiniteAlgebra, require_full: bool = True):
    """Left and right topological centres of the bidual, as kernels.

    In finite dimension both must be the whole space; with ``require_full``
    anything smaller raises :class:`ArensIrregularity`.
    """
    n = a.dim
    X = dual_bimodule(a)
    diff = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            p1, p2 = arens_products(a, unit(n, x), unit(n, y), X)
            diff[x][y] = tuple(s - t for s, t in zip(p1, p2))
    left_rows = ({x: diff[x][y][p] for x in range(n) if diff[x][y][p]} for y in range(n) for p in range(n))
    right_rows = ({x: diff[y][x][p] for x in range(n) if diff[y][x][p]} for y in range(n) for p in range(n))
    left = null_space_sparse(left_rows, n)
    right = null_space_sparse(right_rows, n)
    if require_full and (left.dim != n or right.dim != n):
        raise ArensIrregularity(f"centres of dimension {left.dim}, {right.dim} in a bidual of dimension {n}")
    return left, right


def relative_left_centre(b: FiniteAlgebra, S: Subspace, T: Subspace) -> Subspace:
    """``{F in S : F box G = F dia G for all G in T}`` inside the bidual of ``b``."""
    n = b.dim
    X = dual_bimodule(b)
    rows = []
    diffs = []
    for F in S.basis:
        d = []
        for G in T.basis:
            p1, p2 = arens_products(b, F, G, X)
            d.append(tuple(s - t for s, t in zip(p1, p2)))
        diffs.append(d)
    for t in range(T.dim):
        for p in range(n):
            rows.append({s: diffs[s][t][p] for s in range(S.dim) if diffs[s][t][p]})
    ker = null_space_sparse(rows, S.dim)
    return Subspace.span([S.element(c) for c in ker.basis], n)


def module_topological_centres(X: Bimodule, require_full: bool = True):
    """Left and right topological centres of X** as an A-bimodule.

    Left: x'' with x'' box a'' = x'' dia a'' (right action extended);
    right: x'' with a'' box x'' = a'' dia x'' (left action extended).
    """
    n, m = X.algebra.dim, X.dim
    right_t = [[X.right[p][i] for i in range(n)] for p in range(m)]  # X x A -> X
    left_t = [[X.left[i][p] for p in range(m)] for i in range(n)]  # A x X -> X
    lrows, rrows = [], []
    ldiff = [[None] * n for _ in range(m)]
    rdiff = [[None] * n for _ in range(m)]
    for p in range(m):
        xp = unit(m, p)
        for i in range(n):
            ai = unit(n, i)
            s1 = arens_first_bilinear(right_t, m, n, m, xp, ai)
            s2 = arens_second_bilinear(right_t, m, n, m, xp, ai)
            ldiff[p][i] = tuple(u - v for u, v in zip(s1, s2))
            t1 = arens_first_bilinear(left_t, n, m, m, ai, xp)
            t2 = arens_second_bilinear(left_t, n, m, m, ai, xp)
            rdiff[p][i] = tuple(u - v for u, v in zip(t1, t2))
    for i in range(n):
        for q in range(m):
            lrows.append({p: ldiff[p][i][q] for p in range(m) if ldiff[p][i][q]})
            rrows.append({p: rdiff[p][i][q] for p in range(m) if rdiff[p][i][q]})
    left = null_space_sparse(lrows, m)
    right = null_space_sparse(rrows, m)
    if require_full and (left.dim != m or right.dim != m):
        raise ArensIrregularity(f"module centres of dimension {left.dim}, {right.dim} in X** of dimension {m}")
    return left, right


def bidual_amalgam_check(r: "AmalgamResult") -> Verdict:
    """Both Arens products of the amalgam against the block formulas, on all basis pairs.

    Block formulas, with theta** the double adjoint:

        (F1,F2) box (G1,G2) = (F1 box G1, theta**(F1) box G2 + F2 box G2 + F2 box theta**(G1))
        (F1,F2) dia (G1,G2) = (F1 dia G1, theta**(F1) dia G2 + F2 dia theta**(G1) + F2 dia G2)

    Also checks that both products equal the transported algebra product.
    """
    C, A, B = r.algebra, r.A, r.B
    N = C.dim
    theta2 = adjoint(r.theta).T  # (theta*)* on double-dual coordinates
    XC, XA, XB = dual_bimodule(C), dual_bimodule(A), dual_bimodule(B)
    for x in range(N):
        F = unit(N, x)
        F1, F2 = r.split(F)
        tF1 = theta2.apply(F1)
        F2b = r.i_to_B(F2)
        for y in range(N):
            G = unit(N, y)
            G1, G2 = r.split(G)
            tG1 = theta2.apply(G1)
            G2b = r.i_to_B(G2)
            box, dia = arens_products(C, F, G, XC)
            direct = C.mul(F, G)
            if box != direct or dia != direct:
                return Verdict(False, ("transported", x, y))
            a_box, a_dia = arens_products(A, F1, G1, XA)
            t1 = arens_products(B, tF1, G2b, XB)
            t2 = arens_products(B, F2b, G2b, XB)
            t3 = arens_products(B, F2b, tG1, XB)
            i_box = tuple(u + v + w for u, v, w in zip(t1[0], t2[0], t3[0]))
            i_dia = tuple(u + v + w for u, v, w in zip(t1[1], t3[1], t2[1]))
            try:
                block_box = a_box + r.B_to_i(i_box)
                block_dia = a_dia + r.B_to_i(i_dia)
            except AlgebraError:
                return Verdict(False, ("left-ideal", x, y))
            if block_box != box:
                return Verdict(False, ("box", x, y))
            if block_dia != dia:
                return Verdict(False, ("dia", x, y))
    return Verdict(True)


def amalgam_centre_decomposition(r: "AmalgamResult") -> Verdict:
    """Left centre of the amalgam bidual against its block description.

    The block side is Z_theta(A) ⋈ (Z(I) ∩ Z_{theta(A)}(I)), where Z_theta(A)
    holds the F in Z(A) whose image under theta** commutes through both Arens
    products against I**.
    """
    C, A, B = r.algebra, r.A, r.B
    zc, _ = topological_centres(C, require_full=False)
    za, _ = topological_centres(A, require_full=False)
    zi, _ = topological_centres(r.I_algebra, require_full=False)
    thetaA = Subspace.span(r.theta.matrix.columns(), B.dim)
    I = r.ideal.subspace
    z_theta_in_I = relative_left_centre(B, thetaA, I)
    z_theta = za & _preimage(r.theta, z_theta_in_I, A.dim)
    i_rel_B = relative_left_centre(B, I, thetaA)
    i_rel = Subspace.span([r.B_to_i(v) for v in i_rel_B.basis], r.n_I)
    i_part = zi & i_rel
    block = Subspace.span(
        [r.embed_A(v) for v in z_theta.basis] + [r.embed_I(v) for v in i_part.basis], C.dim
    )
    full = zc.dim == C.dim and block.dim == C.dim
    return Verdict(zc == block and full, (zc.dim, block.dim, C.dim))


def _preimage(m: AlgebraMap, target: Subspace, n: int) -> Subspace:
    """``{v : m(v) in target}``."""
    ann = target.annihilator()
    rows = []
    for w in ann.basis:
        row = m.matrix.T.apply(w)
        rows.append({j: x for j, x in enumerate(row) if x})
    return null_space_sparse(rows, n)
