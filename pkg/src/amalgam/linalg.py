"""Exact dense linear algebra over the rationals.

Every routine here works with :class:`fractions.Fraction` scalars, so ranks,
kernels and equalities are decided exactly.  Elimination is done on sparse
row dictionaries internally because the constraint systems built elsewhere in
the package (derivation spaces, diagonals) are very sparse.

Subspaces are always stored by their reduced row-echelon basis, which makes
subspace equality plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Raised when two objects live in spaces of different dimension."""


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(n))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(u: Sequence) -> bool:
    return not any(u)


@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix stored row-major.

    ``ncols`` is kept explicitly so that matrices with no rows still know
    their width.
    """

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [vec(c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch(f"column of length {len(c)} in a {nrows}-row matrix")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(zeros(ncols) for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit(n, i) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(tuple(tuple(dot(r, c) for c in cols) for r in self.rows), other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(tuple(add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(tuple(sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scaled(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix(tuple(scale(c, r) for r in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def flat(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]


# ---------------------------------------------------------------------------
# sparse elimination core


def _sparse(row: Sequence) -> dict:
    return {j: x for j, x in enumerate(row) if x}


class _Echelon:
    """Incrementally maintained reduced row-echelon basis.

    Pivot rows are kept fully reduced and normalised, and every pivot row's
    leading column is its pivot, so the final basis is the unique RREF no
    matter in which order rows were inserted.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict = {}  # pivot column -> sparse row

    def reduce(self, row: dict) -> dict:
        r = dict(row)
        for p in [k for k in r if k in self.pivots]:
            c = r.get(p)
            if not c:
                continue
            for k, x in self.pivots[p].items():
                y = r.get(k, ZERO) - c * x
                if y:
                    r[k] = y
                else:
                    r.pop(k, None)
        return r

    def insert(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, other in self.pivots.items():
            c = other.get(p)
            if c:
                for k, x in r.items():
                    y = other.get(k, ZERO) - c * x
                    if y:
                        other[k] = y
                    else:
                        other.pop(k, None)
        self.pivots[p] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def sorted_pivots(self) -> list:
        return sorted(self.pivots)

    def dense_rows(self) -> list:
        out = []
        for p in self.sorted_pivots():
            row = [ZERO] * self.ncols
            for k, x in self.pivots[p].items():
                row[k] = x
            out.append(tuple(row))
        return out


def echelon_from_sparse(rows: Iterable[dict], ncols: int) -> _Echelon:
    ech = _Echelon(ncols)
    for r in rows:
        ech.insert(r)
    return ech


def null_space_sparse(rows: Iterable[dict], ncols: int) -> "Subspace":
    """Kernel of the matrix whose rows are the given sparse dicts."""
    ech = echelon_from_sparse(rows, ncols)
    return _kernel_from_echelon(ech)


def rank_sparse(rows: Iterable[dict], ncols: int) -> int:
    return echelon_from_sparse(rows, ncols).rank


def _kernel_from_echelon(ech: _Echelon) -> "Subspace":
    n = ech.ncols
    pivots = ech.pivots
    basis = []
    for f in range(n):
        if f in pivots:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for p, row in pivots.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(tuple(v))
    return Subspace.span(basis, n)


# ---------------------------------------------------------------------------
# public operations


class RREF(NamedTuple):
    matrix: Matrix
    rank: int
    pivots: list


def rref(m: Matrix) -> RREF:
    """Reduced row-echelon form of ``m`` (zero rows kept at the bottom)."""
    ech = echelon_from_sparse((_sparse(r) for r in m.rows), m.ncols)
    rows = ech.dense_rows()
    rows += [zeros(m.ncols)] * (m.nrows - len(rows))
    return RREF(Matrix(tuple(rows), m.ncols), ech.rank, ech.sorted_pivots())


def rank(m: Matrix) -> int:
    return rank_sparse((_sparse(r) for r in m.rows), m.ncols)


def null_space(m: Matrix) -> "Subspace":
    return null_space_sparse((_sparse(r) for r in m.rows), m.ncols)


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """Return one solution of ``m x = b`` or ``None`` if the system is inconsistent.

    Free variables are set to zero, so the particular solution is the one
    read directly off the reduced echelon form.
    """
    if len(b) != m.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.nrows} equations")
    n = m.ncols
    rows = []
    for r, bi in zip(m.rows, b):
        d = _sparse(r)
        bi = to_fraction(bi)
        if bi:
            d[n] = bi
        rows.append(d)
    return solve_sparse(rows, n)


def solve_sparse(rows: Iterable[dict], n: int) -> Optional[Vector]:
    """Solve an augmented sparse system; column ``n`` holds the right-hand side."""
    ech = echelon_from_sparse(rows, n + 1)
    if n in ech.pivots:
        return None
    x = [ZERO] * n
    for p, row in ech.pivots.items():
        x[p] = row.get(n, ZERO)
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by its canonical (RREF) basis."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            rows.append(_sparse(vec(v)))
        ech = echelon_from_sparse(rows, ambient_dim)
        return cls(ambient_dim, tuple(ech.dense_rows()))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list:
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def matrix(self) -> Matrix:
        return Matrix(self.basis, self.ambient_dim)

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coordinates of ``v`` in the echelon basis, or ``None`` if ``v`` is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        coords = tuple(to_fraction(v[p]) for p in self.pivots)
        rebuilt = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        rebuilt[j] += c * x
        if tuple(rebuilt) != tuple(v):
            return None
        return coords

    def element(self, coords: Sequence) -> Vector:
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return tuple(out)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"subspaces of Q^{self.ambient_dim} and Q^{other.ambient_dim}"
            )

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in other for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to the subspace under the standard pairing."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return null_space(self.matrix())

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        rows = self.annihilator().basis + other.annihilator().basis
        return null_space_sparse((_sparse(r) for r in rows), self.ambient_dim)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span((m.apply(v) for v in self.basis), m.nrows)


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    containment: bool
    equality: bool


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """Sum, intersection, ``a`` contained in ``b``, and equality."""
    a._check(b)
    return SubspaceOps(a + b, a & b, a.issubset(b), a == b)
