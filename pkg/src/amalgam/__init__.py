"""Exact computations on amalgamated products of finite-dimensional algebras over Q."""

from .algebra import (
    AlgebraElement,
    AlgebraMap,
    AssociativityViolation,
    FiniteAlgebra,
    IdealEmbedding,
    make_algebra,
    make_ideal,
    make_map,
)
from .constructions import (
    AmalgamResult,
    amalgamate,
    cartesian,
    id_amalgam,
    lau_product,
    module_extension,
    semidirect_product,
    unitize,
)
from .linalg import Matrix, Subspace

__all__ = [
    "AlgebraElement",
    "AlgebraMap",
    "AmalgamResult",
    "AssociativityViolation",
    "FiniteAlgebra",
    "IdealEmbedding",
    "Matrix",
    "Subspace",
    "amalgamate",
    "cartesian",
    "id_amalgam",
    "lau_product",
    "make_algebra",
    "make_ideal",
    "make_map",
    "module_extension",
    "semidirect_product",
    "unitize",
]
