"""Twisted normal discs in marked triangulations.

Enumeration of disc types per marked tetrahedron, their truncation to normal
disc types, matching systems with Hilbert bases, spanning-disc search, disc
collapse certificates and exact evaluation of the resulting move bounds.
"""

from .bounds import (
    disc_count_bound,
    elementary_move_bound,
    projection_bound,
    diagram_triangulation_bound,
    reidemeister_bound,
)
from .disc_catalog import (
    classify_face_arc,
    enumerate_twisted_discs,
    fan_triangulation,
    max_common_arc_count,
    sides,
    subcount,
    truncate_disc_types,
)
from .hilbert import fundamental_coordinate_bound, hilbert_basis, is_fundamental
from .matching import build_matching_system, incompatible_pairs, is_boundary_restricted, rectangle_pattern
from .moves import DiscComplex, collapse_certificate, shelling_order, validate_certificate
from .surface_vectors import (
    SurfaceVector,
    euler_characteristic,
    haken_sum,
    search_spanning_disc,
    spans_knot,
    weight,
)
from .triangulation import (
    MarkedTriangulation,
    TetrahedronMarking,
    TetrahedronType,
    classify_marked_tetrahedron,
    parse_triangulation,
    truncate,
    validate_marking,
)

__version__ = "0.1.0"
