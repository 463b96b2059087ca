"""Build the special constructions and look at their multiplication tables."""

from amalgam.catalog import diagonal, null_algebra, rationals, upper_triangular
from amalgam.constructions import id_amalgam, lau_product, module_extension, quotient_by_I, unitize
from amalgam.duality import make_bimodule


def show(title, r):
    C = r.algebra
    print(f"{title}: dim {C.dim}, basis {', '.join(C.labels)}")
    for i, row in enumerate(C.table):
        cells = ["(" + " ".join(str(x) for x in cell) + ")" for cell in row]
        print(f"  {C.labels[i]:>6} | " + " ".join(cells))
    if r.warnings:
        print("  warnings:", "; ".join(r.warnings))
    print()


show("Q amalgamated with itself along the identity", id_amalgam(rationals()))
show("unitization of the 1-dim zero-product algebra", unitize(null_algebra(1)))

# Q x Q acting on Q: the first factor from the left, the second from the right
QxQ = diagonal(2)
X = make_bimodule(QxQ, 1, [[[1]], [[0]]], [[[0], [1]]], ["x"])
t2 = module_extension(QxQ, X)
show("module extension of Q x Q by Q", t2)
print("equals the upper-triangular table:", t2.algebra.table == upper_triangular().table, "\n")

lau = lau_product(QxQ, upper_triangular(), (1, 0))
show("Lau product of Q x Q and T2 along the first coordinate", lau)

q, iso = quotient_by_I(lau)
print(f"quotient by I has dimension {q.dim}; the map onto A is multiplicative: {iso.multiplicative}")
