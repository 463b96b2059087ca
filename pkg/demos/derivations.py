"""Derivations into the dual: weak amenability, doubling on A amalgamated with itself, Lau products."""

from amalgam.catalog import dual_numbers, matrix_algebra, null_algebra, rationals, upper_triangular
from amalgam.cohomology import (
    derivation_dim_by_rank,
    h1_dual,
    h1c_dim,
    theorem_embedding_lau_check,
)
from amalgam.constructions import id_amalgam, lau_product
from amalgam.duality import dual_bimodule

print(f"{'algebra':<14}{'Z1':>4}{'B1':>4}{'H1':>4}{'H1 of A⋈A':>11}{'rank oracle Z1':>16}")
for name, a in [
    ("Q", rationals()),
    ("dual numbers", dual_numbers()),
    ("T2", upper_triangular()),
    ("M2(Q)", matrix_algebra(2)),
]:
    rep = h1_dual(a)
    doubled = h1_dual(id_amalgam(a).algebra).h1_dim
    oracle = derivation_dim_by_rank(a, dual_bimodule(a))
    print(f"{name:<14}{rep.z1_dim:>4}{rep.b1_dim:>4}{rep.h1_dim:>4}{doubled:>11}{oracle:>16}")

print()
for b_name, B in [("zero product", null_algebra(1)), ("dual numbers", dual_numbers()), ("M2(Q)", matrix_algebra(2))]:
    r = lau_product(rationals(), B, (1,))
    lhs = h1_dual(r.algebra).h1_dim
    rhs = h1_dual(rationals()).h1_dim + h1c_dim(B)
    ok = theorem_embedding_lau_check(rationals(), B, (1,))
    print(f"Lau product Q with {b_name}: H1 = {lhs} >= {rhs}; embedding injective on cohomology: {ok}")
