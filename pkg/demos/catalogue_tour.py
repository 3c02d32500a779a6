"""A walk through the disc catalogue of the nine marked tetrahedron types."""

from collections import Counter

from twistnf.disc_catalog import (
    enumerate_twisted_discs,
    max_common_arc_count,
    new_discs,
    sides,
    subcount,
    truncation,
)
from twistnf.triangulation import TetrahedronType

# How many twisted disc types each tetrahedron type carries, and how many of
# them only exist because of that type's marking.
for t in TetrahedronType:
    discs = enumerate_twisted_discs(t)
    print(f"{t.value:24} {len(discs):4} types, {len(new_discs(t)):3} new")

# A single type, spelled out.  Arcs read "face:from-to"; a run along a marked
# edge reads "m<edge>:<kind>:<faces at its two ends>".
one_edge = enumerate_twisted_discs(TetrahedronType.ONE_EDGE)
for d in one_edge[:5]:
    print(sides(d), d.encoding)

# Shapes by number of sides.
print(Counter(sides(d) for d in one_edge))

# Family counts, restricted to types new in their tetrahedron.
for family in ("full-edge/3", "interior-subarc/4", "exterior-subarc/4"):
    print(family, subcount(TetrahedronType.ONE_EDGE, family, new=True))

# Truncation cuts the marked edge away, so twisted types that differ only
# near it land on one normal type.
tr = truncation(TetrahedronType.ONE_EDGE)
print(len(tr.twisted), "twisted ->", len(tr.normal), "normal")
for k in range(3):
    print(tr.normal[k], "<-", [d.encoding for d in tr.preimages(k)])

# Most normal types sharing one arc type on a face.
print({t.value: max_common_arc_count(t) for t in TetrahedronType})
