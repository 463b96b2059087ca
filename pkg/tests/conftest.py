import json
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from amalgam.algebra import FiniteAlgebra, make_algebra
from amalgam.catalog import (
    diagonal,
    dual_numbers,
    matrix_algebra,
    null_algebra,
    quadratic_field,
    rationals,
    upper_triangular,
    zero_algebra,
)
from amalgam.linalg import Matrix, solve

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = [zero_algebra, rationals, lambda: null_algebra(1), dual_numbers, lambda: diagonal(2), upper_triangular]
ALL = SMALL + [lambda: quadratic_field(2), lambda: matrix_algebra(2)]

rationals_st = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def matrices(nrows: int, ncols: int):
    return st.lists(st.lists(rationals_st, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows).map(
        lambda rows: Matrix.from_rows(rows, ncols)
    )


@st.composite
def any_matrix(draw, max_rows: int = 5, max_cols: int = 5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    return draw(matrices(r, c))


def transport(a: FiniteAlgebra, P: Matrix) -> FiniteAlgebra:
    """The same algebra on the basis f_j = sum_i P[i][j] e_i."""
    n = a.dim
    cols = P.columns()
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(solve(P, a.mul(cols[i], cols[j])))
        table.append(row)
    return make_algebra(n, [f"f{k}" for k in range(n)], table)


@st.composite
def invertible(draw, n: int):
    """L U with L unit lower-triangular and U upper-triangular with nonzero diagonal."""
    small = st.integers(-2, 2)
    L = [[1 if i == j else (draw(small) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[draw(st.sampled_from([1, -1, 2])) if i == j else (draw(small) if j > i else 0) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(L, n) @ Matrix.from_rows(U, n)


@st.composite
def algebras(draw, pool=None):
    """A catalogue algebra presented on a random basis."""
    base = draw(st.sampled_from(pool or SMALL))()
    if base.dim == 0:
        return base
    return transport(base, draw(invertible(base.dim)))


@pytest.fixture(scope="session")
def cat():
    return {
        "zero": zero_algebra(),
        "Q": rationals(),
        "N1": null_algebra(1),
        "dual": dual_numbers(),
        "QxQ": diagonal(2),
        "K": quadratic_field(2),
        "T2": upper_triangular(),
        "M2": matrix_algebra(2),
    }


def _lau_cases():
    from amalgam.constructions import lau_product
    from amalgam.structure import characters

    out = []
    for fa in SMALL[1:]:
        A = fa()
        for ch in characters(A).characters:
            for fb in SMALL:
                out.append(lambda A=A, phi=ch.coords, fb=fb: lau_product(A, fb(), phi))
    return out


def amalgam_builders():
    """Deterministic zero-argument factories covering every construction kind."""
    from amalgam.constructions import cartesian, id_amalgam, module_extension, semidirect_product, unitize
    from amalgam.algebra import make_ideal
    from amalgam.duality import make_bimodule
    from amalgam.linalg import Subspace

    def t2_by_extension():
        QxQ = diagonal(2)
        X = make_bimodule(QxQ, 1, [[[1]], [[0]]], [[[0], [1]]], ["x"])
        return module_extension(QxQ, X)

    def t2_semidirect():
        T = upper_triangular()
        return semidirect_product(T, Subspace.span([(1, 0, 0), (0, 1, 0)], 3), make_ideal(T, [(0, 0, 1)]))

    out = [t2_by_extension, t2_semidirect]
    for f in ALL:
        out += [lambda f=f: id_amalgam(f()), lambda f=f: unitize(f())]
    for f in SMALL:
        for g in SMALL:
            out.append(lambda f=f, g=g: cartesian(f(), g()))
    return out + _lau_cases()


def amalgams():
    return st.sampled_from(amalgam_builders()).map(lambda build: build())


@pytest.fixture(scope="session")
def shipped_run():
    """One full run over the shipped corpus, shared by every test that needs it."""
    from amalgam.verify import corpus_run

    return corpus_run()


@pytest.fixture
def mini_corpus(tmp_path):
    """A three-entry corpus directory with a manifest."""
    from amalgam.io import save_algebra

    entries = []
    for name, a, tags in [
        ("Q", rationals(), ["commutative", "unital", "square-dense", "semisimple", "split"]),
        ("dual", dual_numbers(), ["commutative", "unital", "square-dense", "split"]),
        ("N1", null_algebra(1), ["commutative", "split"]),
    ]:
        save_algebra(a, tmp_path / f"{name}.json")
        entries.append({"name": name, "file": f"{name}.json", "tags": tags})
    (tmp_path / "manifest.json").write_text(json.dumps({"entries": entries}), encoding="utf-8")
    return tmp_path
