"""Characters, radicals and amenability, including a field that does not split over Q."""

from amalgam.catalog import dual_numbers, matrix_algebra, quadratic_field, rationals, upper_triangular
from amalgam.constructions import cartesian, id_amalgam
from amalgam.structure import amalgam_characters, characters, has_diagonal, radical


def describe(name, a):
    spec = characters(a)
    chars = [tuple(str(x) for x in c.coords) for c in spec.characters]
    print(f"{name}:")
    print(f"  radical basis   {[tuple(str(x) for x in v) for v in radical(a).basis]}")
    print(f"  characters      {chars}{'' if spec.complete else '  (incomplete: ' + spec.obstruction + ')'}")
    print(f"  has a diagonal  {has_diagonal(a) is not None}")


for name, a in [
    ("dual numbers", dual_numbers()),
    ("T2", upper_triangular()),
    ("M2(Q)", matrix_algebra(2)),
    ("Q(sqrt 2)", quadratic_field(2)),
    ("Q x Q(sqrt 3)", cartesian(rationals(), quadratic_field(3)).algebra),
]:
    describe(name, a)

r = id_amalgam(rationals())
rep = amalgam_characters(r)
print("\ncharacters of Q amalgamated with itself, assembled from the factors:")
for c in rep.characters:
    print(f"  {c.origin}: {tuple(str(x) for x in c.coords)}")
print("agrees with a direct search:", rep.coord_set() == characters(r.algebra).coord_set())
