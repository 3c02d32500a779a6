"""The spanning-disc search on a four-tetrahedron ball around a square knot."""

from pathlib import Path

from twistnf.hilbert import hilbert_basis
from twistnf.matching import build_matching_system, is_boundary_restricted, rectangle_pattern
from twistnf.surface_vectors import SurfaceVector, euler_characteristic, search_spanning_disc, weight
from twistnf.triangulation import parse_triangulation

text = (Path(__file__).resolve().parent.parent / "fixtures" / "square_unknot.tri").read_text()
print(text)
tri = parse_triangulation(text)

system = build_matching_system(tri)
print(system.n, "variables,", len(system.equations), "equations")
print(system.equation_labels[0], system.equations[0])

# the basis takes a few seconds
basis = hilbert_basis(system)
restricted = [v for v in basis if is_boundary_restricted(v, system)]
print(len(basis), "fundamental solutions,", len(restricted), "boundary-restricted")

best = search_spanning_disc(tri)[0]
print("weight", best.weight, "euler", best.euler)
for k, c in enumerate(best.coords):
    if c:
        tet, disc = system.variables[k]
        print(f"  {c} x tet {tet}: {disc}")

# What the winning disc leaves on the rectangles around the knot.
for r, (tet, e) in enumerate(system.rectangles):
    print(tet, e, rectangle_pattern(best.coords, system, r).kind)

# Twice the disc is still a solution but not a disc any more.
double = SurfaceVector(tuple(2 * c for c in best.coords), system)
print(euler_characteristic(double), weight(double), is_boundary_restricted(double.coords, system))
