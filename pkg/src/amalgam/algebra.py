"""Finite-dimensional associative algebras given by structure constants.

An algebra of dimension ``n`` is stored as the tensor ``table[i][j][k]`` with
``e_i e_j = sum_k table[i][j][k] e_k``.  Elements are coordinate tuples of
Fractions; :class:`AlgebraElement` is a thin wrapper for interactive use.

The element norm is the weighted coefficient l1 norm ``sum_k w_k |x_k|``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .linalg import (
    ONE,
    ZERO,
    DimensionMismatch,
    Matrix,
    Subspace,
    null_space_sparse,
    rank_sparse,
    solve_sparse,
    to_fraction,
    unit,
    vec,
    zeros,
)

log = logging.getLogger(__name__)


class AlgebraError(ValueError):
    pass


class AssociativityViolation(AlgebraError):
    """The table is not associative; ``witness`` is the basis triple (i, j, k)."""

    def __init__(self, witness, component=None, labels=None):
        self.witness = tuple(witness)
        self.component = component
        names = witness if labels is None else tuple(labels[t] for t in witness)
        super().__init__(f"(e_i e_j) e_k != e_i (e_j e_k) for (i, j, k) = {names}")


class DuplicateLabel(AlgebraError):
    pass


class NonpositiveWeight(AlgebraError):
    pass


class NotSubalgebra(AlgebraError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


class Verdict(NamedTuple):
    """Outcome of a yes/no check together with a witness when it fails."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FiniteAlgebra:
    dim: int
    labels: tuple
    table: tuple
    weights: tuple

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.dim, self.labels, self.table, self.weights))

    @cached_property
    def products(self) -> tuple:
        """Sparse products: ``products[i][j]`` is a tuple of (k, coefficient)."""
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.table[i][j]) if c) for j in range(self.dim))
            for i in range(self.dim)
        )

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        n = self.dim
        out = [ZERO] * n
        prods = self.products
        for i, a in enumerate(u):
            if not a:
                continue
            row = prods[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def basis_product(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def zero(self) -> tuple:
        return zeros(self.dim)

    def unit_vector(self, k: int) -> tuple:
        return unit(self.dim, k)

    def norm(self, v: Sequence) -> Fraction:
        return sum((w * abs(x) for w, x in zip(self.weights, v)), ZERO)

    def left_matrix(self, z: Sequence) -> Matrix:
        """Matrix of left multiplication ``y -> z y``."""
        cols = [self.mul(z, self.unit_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def right_matrix(self, z: Sequence) -> Matrix:
        cols = [self.mul(self.unit_vector(j), z) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, vec(coords))

    def basis_element(self, label_or_index) -> "AlgebraElement":
        k = label_or_index if isinstance(label_or_index, int) else self.labels.index(label_or_index)
        return AlgebraElement(self, self.unit_vector(k))

    def __repr__(self) -> str:
        return f"FiniteAlgebra(dim={self.dim}, labels={list(self.labels)})"


def make_algebra(dim: int, labels=None, table=None, norm_weights=None) -> FiniteAlgebra:
    """Validate and freeze a structure-constant table.

    ``labels`` default to ``e0, e1, ...`` and ``norm_weights`` to all ones.
    Raises :class:`AssociativityViolation`, :class:`DuplicateLabel` or
    :class:`NonpositiveWeight`.
    """
    n = int(dim)
    if n < 0:
        raise AlgebraError("dimension must be non-negative")
    labels = tuple(f"e{i}" for i in range(n)) if labels is None else tuple(str(s) for s in labels)
    if len(labels) != n:
        raise AlgebraError(f"{len(labels)} labels for dimension {n}")
    if len(set(labels)) != n:
        dup = next(s for s in labels if labels.count(s) > 1)
        raise DuplicateLabel(f"label {dup!r} used twice")
    if table is None:
        table = [[[0] * n for _ in range(n)] for _ in range(n)]
    if len(table) != n or any(len(r) != n or any(len(c) != n for c in r) for r in table):
        raise AlgebraError(f"table must have shape {n}x{n}x{n}")
    tbl = tuple(tuple(vec(c) for c in r) for r in table)
    weights = (ONE,) * n if norm_weights is None else vec(norm_weights)
    if len(weights) != n:
        raise AlgebraError(f"{len(weights)} weights for dimension {n}")
    for lab, w in zip(labels, weights):
        if w <= 0:
            raise NonpositiveWeight(f"weight {w} of {lab!r} is not positive")
    alg = FiniteAlgebra(n, labels, tbl, weights)
    witness = associativity_witness(alg)
    if witness is not None:
        raise AssociativityViolation(witness[:3], witness[3], labels)
    return alg


def associativity_witness(a: FiniteAlgebra):
    """First (i, j, k, q) where the q-th coordinates of (e_i e_j) e_k and e_i (e_j e_k) differ."""
    n = a.dim
    for i in range(n):
        for j in range(n):
            eij = a.table[i][j]
            for k in range(n):
                left = a.mul(eij, a.unit_vector(k))
                right = a.mul(a.unit_vector(i), a.table[j][k])
                if left != right:
                    q = next(t for t in range(n) if left[t] != right[t])
                    return (i, j, k, q)
    return None


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: FiniteAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionMismatch(
                f"{len(self.coords)} coordinates for an algebra of dimension {self.algebra.dim}"
            )

    def _same(self, other: "AlgebraElement") -> None:
        if other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = to_fraction(other)
        return AlgebraElement(self.algebra, tuple(c * x for x in self.coords))

    def __rmul__(self, other):
        c = to_fraction(other)
        return AlgebraElement(self.algebra, tuple(c * x for x in self.coords))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-x for x in self.coords))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def norm(self) -> Fraction:
        return self.algebra.norm(self.coords)

    def __repr__(self) -> str:
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(terms) if terms else "0"


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != y.algebra:
        raise AlgebraMismatch("cannot multiply elements of different algebras")
    return AlgebraElement(x.algebra, x.algebra.mul(x.coords, y.coords))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class AlgebraMap:
    """Linear map ``domain -> codomain``; column j of ``matrix`` is the image of e_j."""

    domain: FiniteAlgebra
    codomain: FiniteAlgebra
    matrix: Matrix
    multiplicative: bool = False

    def __call__(self, v: Sequence) -> tuple:
        if isinstance(v, AlgebraElement):
            return AlgebraElement(self.codomain, self.matrix.apply(v.coords))
        return self.matrix.apply(v)

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """``self o inner``."""
        return make_map(inner.domain, self.codomain, self.matrix @ inner.matrix)


def make_map(domain: FiniteAlgebra, codomain: FiniteAlgebra, matrix) -> AlgebraMap:
    """Build a map and record whether it is multiplicative."""
    if not isinstance(matrix, Matrix):
        matrix = Matrix.from_rows(matrix, domain.dim)
    if matrix.shape != (codomain.dim, domain.dim):
        raise DimensionMismatch(
            f"map matrix has shape {matrix.shape}, expected {(codomain.dim, domain.dim)}"
        )
    m = AlgebraMap(domain, codomain, matrix)
    return AlgebraMap(domain, codomain, matrix, bool(verify_homomorphism(m)))


def identity_map(a: FiniteAlgebra) -> AlgebraMap:
    return AlgebraMap(a, a, Matrix.identity(a.dim), True)


def zero_map(domain: FiniteAlgebra, codomain: FiniteAlgebra) -> AlgebraMap:
    return AlgebraMap(domain, codomain, Matrix.zero(codomain.dim, domain.dim), True)


def verify_homomorphism(m: AlgebraMap) -> Verdict:
    """Check ``m(e_i e_j) == m(e_i) m(e_j)``; the witness is the first failing (i, j)."""
    if m.matrix.shape != (m.codomain.dim, m.domain.dim):
        raise DimensionMismatch("map matrix does not match domain/codomain dimensions")
    images = m.matrix.columns()
    for i in range(m.domain.dim):
        for j in range(m.domain.dim):
            if m.matrix.apply(m.domain.table[i][j]) != m.codomain.mul(images[i], images[j]):
                return Verdict(False, (i, j))
    return Verdict(True)


def operator_norm_bound(m: AlgebraMap) -> Fraction:
    """Exact operator norm for the weighted l1 norms: ``max_j |m(e_j)| / w_j``."""
    best = ZERO
    for j, col in enumerate(m.matrix.columns()):
        best = max(best, m.codomain.norm(col) / m.domain.weights[j])
    return best


# ---------------------------------------------------------------------------
# ideals and subalgebras


@dataclass(frozen=True)
class IdealEmbedding:
    ambient: FiniteAlgebra
    subspace: Subspace
    two_sided: bool = False


def verify_ideal(i: IdealEmbedding) -> Verdict:
    """Witness is ``(side, b, v)`` with ``side`` in {"left", "right"}: b*v or v*b escaped."""
    a, sub = i.ambient, i.subspace
    for b in range(a.dim):
        eb = a.unit_vector(b)
        for s, v in enumerate(sub.basis):
            if a.mul(eb, v) not in sub:
                return Verdict(False, ("left", b, s))
            if a.mul(v, eb) not in sub:
                return Verdict(False, ("right", b, s))
    return Verdict(True)


def make_ideal(ambient: FiniteAlgebra, vectors) -> IdealEmbedding:
    sub = vectors if isinstance(vectors, Subspace) else Subspace.span([vec(v) for v in vectors], ambient.dim)
    if sub.ambient_dim != ambient.dim:
        raise DimensionMismatch("ideal basis lives in the wrong space")
    emb = IdealEmbedding(ambient, sub)
    return IdealEmbedding(ambient, sub, bool(verify_ideal(emb)))


def ideal_generated(a: FiniteAlgebra, vectors) -> Subspace:
    """Smallest two-sided ideal containing the given vectors."""
    current = Subspace.span(list(vectors), a.dim)
    while True:
        more = list(current.basis)
        for v in current.basis:
            for b in range(a.dim):
                eb = a.unit_vector(b)
                more.append(a.mul(eb, v))
                more.append(a.mul(v, eb))
                for c in range(a.dim):
                    more.append(a.mul(a.mul(eb, v), a.unit_vector(c)))
        nxt = Subspace.span(more, a.dim)
        if nxt == current:
            return current
        current = nxt


def product_span(a: FiniteAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """Linear span of all products x*y with x in ``left`` and y in ``right``."""
    return Subspace.span([a.mul(x, y) for x in left.basis for y in right.basis], a.dim)


def is_subalgebra(a: FiniteAlgebra, sub: Subspace) -> Verdict:
    for s, x in enumerate(sub.basis):
        for t, y in enumerate(sub.basis):
            if a.mul(x, y) not in sub:
                return Verdict(False, (s, t))
    return Verdict(True)


def subalgebra(a: FiniteAlgebra, sub: Subspace) -> FiniteAlgebra:
    """The subspace as an algebra in its own right, on the echelon basis.

    Each basis vector is labelled by the ambient label of its pivot column and
    weighted by its ambient norm.
    """
    ok = is_subalgebra(a, sub)
    if not ok:
        raise NotSubalgebra(f"product of basis vectors {ok.witness} leaves the subspace")
    m = sub.dim
    table = [[sub.coordinates(a.mul(x, y)) for y in sub.basis] for x in sub.basis]
    labels = [a.labels[p] for p in sub.pivots]
    weights = [a.norm(v) for v in sub.basis]
    return make_algebra(m, labels, table, weights)


def quotient(a: FiniteAlgebra, ideal: Subspace):
    """Quotient algebra ``a / ideal`` and the projection ``a -> a / ideal``.

    The quotient basis is the cosets of the standard basis vectors at the
    non-pivot columns of the ideal; labels and weights are inherited.
    """
    emb = IdealEmbedding(a, ideal)
    ok = verify_ideal(emb)
    if not ok:
        raise AlgebraError(f"not a two-sided ideal (witness {ok.witness})")
    pivots = ideal.pivots
    keep = [k for k in range(a.dim) if k not in set(pivots)]

    def reduce(v):
        v = list(v)
        for p, row in zip(pivots, ideal.basis):
            c = v[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= c * x
        return tuple(v[k] for k in keep)

    table = [
        [reduce(a.table[i][j]) for j in keep]
        for i in keep
    ]
    q = make_algebra(len(keep), [a.labels[k] for k in keep], table, [a.weights[k] for k in keep])
    proj = Matrix.from_columns([reduce(a.unit_vector(k)) for k in range(a.dim)], q.dim)
    return q, make_map(a, q, proj)


def commutator_ideal(a: FiniteAlgebra) -> Subspace:
    gens = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            gens.append(tuple(x - y for x, y in zip(a.table[i][j], a.table[j][i])))
    return ideal_generated(a, gens)


# ---------------------------------------------------------------------------
# identity, commutativity, density


def find_identity(a: FiniteAlgebra) -> Optional[AlgebraElement]:
    """Solve ``e e_j = e_j = e_j e`` for all j; the solution is unique when it exists."""
    n = a.dim
    rows = []
    for j in range(n):
        for k in range(n):
            left = {s: a.table[s][j][k] for s in range(n) if a.table[s][j][k]}
            right = {s: a.table[j][s][k] for s in range(n) if a.table[j][s][k]}
            if j == k:
                left[n] = ONE
                right[n] = ONE
            rows.append(left)
            rows.append(right)
    x = solve_sparse(rows, n)
    if x is None:
        return None
    return AlgebraElement(a, x)


def is_commutative(a: FiniteAlgebra) -> Verdict:
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.table[i][j] != a.table[j][i]:
                return Verdict(False, (i, j))
    return Verdict(True)


def subspace_is_commutative(a: FiniteAlgebra, sub: Subspace) -> Verdict:
    for s, x in enumerate(sub.basis):
        for t in range(s + 1, sub.dim):
            y = sub.basis[t]
            if a.mul(x, y) != a.mul(y, x):
                return Verdict(False, (s, t))
    return Verdict(True)


def is_square_dense(a: FiniteAlgebra) -> bool:
    """True when the products e_i e_j span the whole algebra."""
    rows = ({k: c for k, c in enumerate(a.table[i][j]) if c} for i in range(a.dim) for j in range(a.dim))
    return rank_sparse(rows, a.dim) == a.dim


def annihilator_in_ideal(theta: AlgebraMap, ideal: IdealEmbedding) -> Subspace:
    """``{j in I : j theta(a) = theta(a) j = 0 for all a}`` as a subspace of the codomain."""
    B = ideal.ambient
    if theta.codomain != B:
        raise AlgebraMismatch("theta does not map into the ambient algebra of the ideal")
    basis = ideal.subspace.basis
    m = len(basis)
    rows = []
    for img in theta.matrix.columns():
        lefts = [B.mul(v, img) for v in basis]
        rights = [B.mul(img, v) for v in basis]
        for k in range(B.dim):
            rows.append({s: lefts[s][k] for s in range(m) if lefts[s][k]})
            rows.append({s: rights[s][k] for s in range(m) if rights[s][k]})
    ker = null_space_sparse(rows, m)
    return Subspace.span([ideal.subspace.element(t) for t in ker.basis], B.dim)


def check_submultiplicative(a: FiniteAlgebra) -> Fraction:
    """``max_ij |e_i e_j| / (w_i w_j)``; at most 1 exactly when the norm is submultiplicative."""
    best = ZERO
    for i in range(a.dim):
        for j in range(a.dim):
            best = max(best, a.norm(a.table[i][j]) / (a.weights[i] * a.weights[j]))
    return best
