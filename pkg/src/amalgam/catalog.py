"""Small named algebras used throughout the tests, demos and shipped corpus."""

from __future__ import annotations

from math import isqrt

from .algebra import FiniteAlgebra, make_algebra


def _empty(n):
    return [[[0] * n for _ in range(n)] for _ in range(n)]


def zero_algebra() -> FiniteAlgebra:
    return make_algebra(0, [], [])


def rationals() -> FiniteAlgebra:
    """Q with basis {u}, u*u = u."""
    return make_algebra(1, ["u"], [[[1]]])


def null_algebra(n: int = 1) -> FiniteAlgebra:
    """n-dimensional algebra with identically zero product."""
    return make_algebra(n, [f"z{i}" for i in range(n)], _empty(n))


def dual_numbers() -> FiniteAlgebra:
    """Q[eps]/(eps^2) on the basis {1, eps}."""
    t = _empty(2)
    t[0][0][0] = 1
    t[0][1][1] = 1
    t[1][0][1] = 1
    return make_algebra(2, ["1", "eps"], t)


def diagonal(n: int = 2) -> FiniteAlgebra:
    """Q^n with coordinatewise product."""
    t = _empty(n)
    for i in range(n):
        t[i][i][i] = 1
    return make_algebra(n, [f"d{i}" for i in range(n)], t)


def quadratic_field(d: int = 2) -> FiniteAlgebra:
    """Q[x]/(x^2 - d) on the basis {1, x}.

    x gets weight isqrt(d) + 1 > sqrt(d) so the norm stays submultiplicative.
    """
    t = _empty(2)
    t[0][0][0] = 1
    t[0][1][1] = 1
    t[1][0][1] = 1
    t[1][1][0] = d
    return make_algebra(2, ["1", "x"], t, [1, isqrt(abs(d)) + 1])


def matrix_algebra(n: int = 2) -> FiniteAlgebra:
    """M_n(Q) on matrix units e_ij, ordered row-major."""
    idx = [(i, j) for i in range(n) for j in range(n)]
    pos = {p: k for k, p in enumerate(idx)}
    t = _empty(n * n)
    for (i, j) in idx:
        for (k, l) in idx:
            if j == k:
                t[pos[(i, j)]][pos[(k, l)]][pos[(i, l)]] = 1
    return make_algebra(n * n, [f"e{i + 1}{j + 1}" for i, j in idx], t)


def upper_triangular() -> FiniteAlgebra:
    """T_2: upper-triangular 2x2 matrices on the basis e11, e22, e12."""
    labels = ["e11", "e22", "e12"]
    units = {"e11": (1, 1), "e22": (2, 2), "e12": (1, 2)}
    t = _empty(3)
    for a, la in enumerate(labels):
        for b, lb in enumerate(labels):
            (i, j), (k, l) = units[la], units[lb]
            if j == k:
                t[a][b][labels.index(next(s for s, u in units.items() if u == (i, l)))] = 1
    return make_algebra(3, labels, t)


def bad_table() -> list:
    """A non-associative 2-dim table: e0 e0 = e1, e1 e0 = e0, everything else 0."""
    t = _empty(2)
    t[0][0][1] = 1
    t[1][0][0] = 1
    return t
