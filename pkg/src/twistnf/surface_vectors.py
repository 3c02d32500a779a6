"""Normal surfaces as coordinate vectors over a matching system.

Nothing here reconstructs a surface geometrically.  Connectedness and
embeddedness of a vector's realization are not checked; every predicate is a
necessary condition read off the coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .bounds import disc_count_bound
from .disc_catalog import Crossing
from .hilbert import DEFAULT_CAP, fundamental_coordinate_bound, hilbert_basis, is_fundamental
from .matching import MatchingSystem, build_matching_system, is_boundary_restricted
from .triangulation import VERTICES, MarkedTriangulation, edge

log = logging.getLogger(__name__)


class IncompatibleSum(ValueError):
    def __init__(self, pair):
        super().__init__(f"incompatible pair: variables {pair[0]} and {pair[1]} are both nonzero")
        self.pair = pair


@dataclass(frozen=True)
class SurfaceVector:
    coords: tuple[int, ...]
    system: MatchingSystem

    def __post_init__(self):
        if len(self.coords) != self.system.n:
            raise ValueError(f"expected {self.system.n} coordinates, got {len(self.coords)}")

    @classmethod
    def zero(cls, system: MatchingSystem) -> "SurfaceVector":
        return cls((0,) * system.n, system)

    @classmethod
    def unit(cls, system: MatchingSystem, k: int, times: int = 1) -> "SurfaceVector":
        c = [0] * system.n
        c[k] = times
        return cls(tuple(c), system)


def _require_solution(v: SurfaceVector):
    if not v.system.is_solution(v.coords):
        raise ValueError("vector does not satisfy the matching equations")


def haken_sum(v1: SurfaceVector, v2: SurfaceVector) -> SurfaceVector:
    if v1.system is not v2.system:
        raise ValueError("vectors belong to different systems")
    _require_solution(v1)
    _require_solution(v2)
    total = tuple(a + b for a, b in zip(v1.coords, v2.coords))
    pair = v1.system.violated_pair(total)
    if pair:
        raise IncompatibleSum(pair)
    return SurfaceVector(total, v1.system)


# -- per-variable bookkeeping -------------------------------------------------


def _local_terms(sys: MatchingSystem) -> tuple[tuple[Fraction, Fraction], ...]:
    """Per variable: (Euler characteristic share, weight share)."""
    cached = sys.__dict__.get("_surface_terms")
    if cached is None:
        cached = _compute_terms(sys)
        object.__setattr__(sys, "_surface_terms", cached)
    return cached


def _compute_terms(sys: MatchingSystem) -> tuple[tuple[Fraction, Fraction], ...]:
    tri = sys.truncated.triangulation
    ec = tri.edge_classes
    degree = {}
    for key, cls in ec.items():
        degree[cls] = degree.get(cls, 0) + 1
    out = []
    cell_edges = {}
    for tet, nd in sys.variables:
        if tet not in cell_edges:
            cell_edges[tet] = sys.truncated.cells[tet].edges()
        faces_of = cell_edges[tet]
        points = Fraction(0)
        on_skeleton = Fraction(0)
        for ce in nd.crossed:
            f1, f2 = faces_of[ce]
            if f1[0] == "face" and f2[0] == "face":
                e = tuple(v for v in VERTICES if v not in (f1[1], f2[1]))
                share = Fraction(1, degree[ec[(tet, edge(*e))]])
                on_skeleton += share
            else:
                f = f1 if f1[0] == "face" else f2
                share = Fraction(1, 2 if tri.glued(tet, f[1]) else 1)
            points += share
        arcs = Fraction(0)
        for a in nd.arcs:
            glued = a.face[0] == "face" and tri.glued(tet, a.face[1])
            arcs += Fraction(1, 2) if glued else 1
        out.append((points - arcs + 1, on_skeleton))
    return tuple(out)


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer ({x}); incidence data is inconsistent")
    return int(x)


def euler_characteristic(v: SurfaceVector) -> int:
    """V - E + F of the surface, summed disc by disc with shared cells split."""
    terms = _local_terms(v.system)
    return _integral(sum((c * t[0] for c, t in zip(v.coords, terms)), Fraction(0)), "Euler characteristic")


def weight(v: SurfaceVector) -> int:
    """Points where the surface meets edges of the triangulation outside the link."""
    terms = _local_terms(v.system)
    return _integral(sum((c * t[1] for c, t in zip(v.coords, terms)), Fraction(0)), "weight")


def spans_knot(v: SurfaceVector) -> bool:
    """Whether the boundary runs once along every edge of the link.

    For each link edge, the crossings of the rectangles around it are tallied
    at each end: a longitudinal arc reaches both ends and a corner-cutting arc
    reaches the end at its corner.  The boundary spans when every end of
    every link edge is reached exactly once.
    """
    sys = v.system
    if not is_boundary_restricted(v.coords, sys):
        raise ValueError("vector is not boundary-restricted")
    tri = sys.truncated.triangulation
    vc, ec = tri.vertex_classes, tri.edge_classes
    ends: dict = {}
    for r, (tet, e) in enumerate(sys.rectangles):
        key = ec[(tet, e)]
        tally = ends.setdefault(key, {vc[(tet, e[0])]: 0, vc[(tet, e[1])]: 0})
        for k, crossings in enumerate(sys.rectangle_incidence[r]):
            if not v.coords[k]:
                continue
            for kind, corner in crossings:
                if kind is Crossing.LONGITUDINAL:
                    for u in e:
                        tally[vc[(tet, u)]] += v.coords[k]
                elif kind is Crossing.CORNER:
                    tally[vc[(tet, corner[1])]] += v.coords[k]
    if not ends:
        return False
    return all(n == 1 for tally in ends.values() for n in tally.values())


# -- the search pipeline ------------------------------------------------------


@dataclass(frozen=True)
class SpanningCandidate:
    vector: SurfaceVector
    weight: int
    euler: int
    boundary_restricted: bool
    spans: bool
    fundamental: bool
    compatible: bool

    @property
    def coords(self) -> tuple[int, ...]:
        return self.vector.coords


def evaluate(v: SurfaceVector) -> SpanningCandidate:
    sys = v.system
    restricted = is_boundary_restricted(v.coords, sys)
    return SpanningCandidate(
        v,
        weight(v),
        euler_characteristic(v),
        restricted,
        restricted and spans_knot(v),
        is_fundamental(v.coords, sys.equations) if sys.equations else sum(v.coords) == 1,
        sys.is_compatible(v.coords),
    )


def search_spanning_disc(tri: MarkedTriangulation, *, cap: int = DEFAULT_CAP) -> list[SpanningCandidate]:
    """Fundamental solutions that pass every vector-level test for a spanning disc.

    Sorted by weight, then by coordinates.  An empty result is logged.
    """
    sys = build_matching_system(tri)
    basis = hilbert_basis(sys, sys.n, cap=cap)
    bound = fundamental_coordinate_bound(sys.n, max(1, sys.max_abs_sum()))
    _, _, disc_budget = disc_count_bound(tri.tet_count)
    out = []
    for coords in basis:
        if max(coords) > bound:
            raise AssertionError(f"basis coordinate exceeds the fundamental bound {bound}")
        v = SurfaceVector(coords, sys)
        if not sys.is_compatible(coords) or not is_boundary_restricted(coords, sys, check=False):
            continue
        if not spans_knot(v) or euler_characteristic(v) != 1:
            continue
        cand = evaluate(v)
        if not cand.fundamental:
            raise AssertionError("a Hilbert basis element decomposes")
        if sum(coords) > disc_budget:
            raise AssertionError("candidate uses more discs than the disc-count bound allows")
        out.append(cand)
    out.sort(key=lambda c: (c.weight, c.coords))
    if not out:
        log.warning("no spanning disc among %d Hilbert basis elements", len(basis))
    return out
