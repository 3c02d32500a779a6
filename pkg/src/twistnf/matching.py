"""Matching equations, disjointness of disc types and rectangle patterns."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .disc_catalog import Crossing, NormalDiscType, cell_edge_label, truncation
from .triangulation import (
    MarkedTriangulation,
    TetrahedronMarking,
    TruncatedCell,
    TruncatedTriangulation,
    face_vertices,
    truncate,
)


# -- disjointness -------------------------------------------------------------


def _face_arcs(n: NormalDiscType) -> dict:
    out = {}
    for a in n.arcs:
        out.setdefault(a.face, []).append((a.start, a.end))
    return out


def _sort_key(x):
    return tuple(str(p) for p in x)


def _realizable_disjointly(cell: TruncatedCell, a: NormalDiscType, b: NormalDiscType) -> bool:
    """Whether two boundary curves can be drawn disjointly on the cell boundary.

    Each curve meets a cell edge at most once, so the only freedom is the
    order of the two points on each shared edge.  All orders are tried, with a
    face checked as soon as every shared edge on it is decided.
    """
    shared = sorted(a.crossed & b.crossed, key=lambda s: sorted(map(str, s)))
    arcs_a, arcs_b = _face_arcs(a), _face_arcs(b)
    faces = [f for f in arcs_a if f in arcs_b]
    cycles = {f: cell.faces[f] for f in faces}

    face_vars = {}
    for f in faces:
        sides = {frozenset(p) for p in zip(cycles[f], cycles[f][1:] + cycles[f][:1])}
        face_vars[f] = {i for i, s in enumerate(shared) if s in sides}
    by_last = {}
    for f in faces:
        last = max(face_vars[f], default=-1)
        by_last.setdefault(last, []).append(f)

    def position(f, side, which, order):
        cyc = cycles[f]
        for i, (p, q) in enumerate(zip(cyc, cyc[1:] + cyc[:1])):
            if frozenset((p, q)) == side:
                break
        if side not in shared_index:
            return i + 0.5
        a_first = order[shared_index[side]]
        forward = str(p) < str(q)
        first = a_first if forward else not a_first
        mine_first = first if which == "a" else not first
        return i + (1 / 3 if mine_first else 2 / 3)

    shared_index = {s: i for i, s in enumerate(shared)}

    def face_ok(f, order):
        for sa, ea in arcs_a[f]:
            pa = sorted((position(f, sa, "a", order), position(f, ea, "a", order)))
            for sb, eb in arcs_b[f]:
                q1, q2 = position(f, sb, "b", order), position(f, eb, "b", order)
                if (pa[0] < q1 < pa[1]) != (pa[0] < q2 < pa[1]):
                    return False
        return True

    order = [None] * len(shared)

    def search(k):
        for f in by_last.get(k - 1, []):
            if not face_ok(f, order):
                return False
        if k == len(shared):
            return True
        for choice in (True, False):
            order[k] = choice
            if search(k + 1):
                return True
        order[k] = None
        return False

    if not search(0):
        return False
    return True


@functools.lru_cache(maxsize=None)
def _incompatible(marking: TetrahedronMarking) -> frozenset:
    tr = truncation(marking)
    cell = tr.normal[0].cell if tr.normal else None
    out = set()
    for i, j in itertools.combinations(range(len(tr.normal)), 2):
        if not _realizable_disjointly(cell, tr.normal[i], tr.normal[j]):
            out.add((i, j))
    return frozenset(out)


def incompatible_pairs(t) -> set[tuple[int, int]]:
    """Index pairs of normal disc types that cannot be disjoint in one cell.

    Indices refer to :func:`twistnf.disc_catalog.truncate_disc_types`.
    """
    from .disc_catalog import _as_marking

    return set(_incompatible(_as_marking(t)))


# -- rectangle patterns -------------------------------------------------------


@dataclass(frozen=True)
class RectanglePattern:
    """Aggregate boundary pattern on one rectangle.

    ``kind`` is ``"longitudinal"``, ``"meridional"``, ``"meridional+corners"``
    or ``"invalid"``.
    """

    kind: str
    meridional: int = 0
    corners: tuple = ()

    @property
    def valid(self) -> bool:
        return self.kind != "invalid"


def _opposite_corners(e) -> set:
    a, b = e
    c, d = (v for v in range(4) if v not in e)
    return {
        frozenset({("p", a, c), ("p", b, d)}),
        frozenset({("p", b, c), ("p", a, d)}),
    }


def classify_rectangle(e, longitudinal: int, meridional: int, corners: dict) -> RectanglePattern:
    corner_list = tuple(sorted((k for k, n in corners.items() for _ in range(n)), key=str))
    if longitudinal:
        if longitudinal == 1 and not meridional and not corner_list:
            return RectanglePattern("longitudinal")
        return RectanglePattern("invalid", meridional, corner_list)
    if not corner_list:
        return RectanglePattern("meridional", meridional)
    if len(corner_list) == 1:
        return RectanglePattern("meridional+corners", meridional, corner_list)
    if len(corner_list) == 2 and frozenset(corner_list) in _opposite_corners(e):
        return RectanglePattern("meridional+corners", meridional, corner_list)
    return RectanglePattern("invalid", meridional, corner_list)


# -- the system ---------------------------------------------------------------


@dataclass(frozen=True)
class MatchingSystem:
    """Matching equations over ``(tet, normal disc type)`` variables.

    ``rectangles`` lists ``(tet, edge)`` for every rectangle face and
    ``rectangle_incidence[r][k]`` holds the crossings variable ``k`` makes on
    rectangle ``r``.
    """

    variables: tuple[tuple[int, NormalDiscType], ...]
    equations: tuple[tuple[int, ...], ...]
    equation_labels: tuple[str, ...]
    incompatible: frozenset[tuple[int, int]]
    rectangles: tuple[tuple[int, tuple[int, int]], ...]
    rectangle_incidence: tuple[tuple[tuple, ...], ...]
    truncated: TruncatedTriangulation | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.variables)

    def max_abs_sum(self) -> int:
        return max((sum(abs(c) for c in row) for row in self.equations), default=0)

    def residual(self, v) -> list[int]:
        return [sum(c * x for c, x in zip(row, v)) for row in self.equations]

    def is_solution(self, v) -> bool:
        return len(v) == self.n and all(x >= 0 for x in v) and not any(self.residual(v))

    def violated_pair(self, v):
        for i, j in sorted(self.incompatible):
            if v[i] and v[j]:
                return (i, j)
        return None

    def is_compatible(self, v) -> bool:
        return self.violated_pair(v) is None


def _map_label(x, perm):
    return ("v", perm[x[1]]) if x[0] == "v" else ("p", perm[x[1]], perm[x[2]])


def _arc_key(sides) -> tuple:
    return tuple(sorted(tuple(sorted(map(str, s))) for s in sides))


def build_matching_system(tri: MarkedTriangulation | TruncatedTriangulation) -> MatchingSystem:
    ttri = tri if isinstance(tri, TruncatedTriangulation) else truncate(tri)
    base = ttri.triangulation
    variables, offsets, tables = [], [], []
    for i, cell in enumerate(ttri.cells):
        tr = truncation(cell.marking)
        offsets.append(len(variables))
        tables.append(tr)
        variables.extend((i, nd) for nd in tr.normal)
    n = len(variables)

    def incidence(i, f):
        """Arc type (as side pair) -> {variable: multiplicity} for face f of tet i."""
        out = {}
        for k, nd in enumerate(tables[i].normal):
            for a in nd.face_arcs():
                if a.face[1] == f:
                    row = out.setdefault(a.sides, {})
                    row[offsets[i] + k] = row.get(offsets[i] + k, 0) + 1
        return out

    equations, labels, done = [], [], set()
    for (i, f), g in sorted(base._glue_map.items()):
        if (g.other, g.other_face) in done:
            continue
        done.add((i, f))
        mine = incidence(i, f)
        theirs = {}
        for sides, row in incidence(g.other, g.other_face).items():
            back = [0, 0, 0, 0]
            for v, w in enumerate(g.perm):
                back[w] = v
            key = frozenset(frozenset(_map_label(x, back) for x in s) for s in sides)
            theirs[key] = row
        for sides in sorted(set(mine) | set(theirs), key=_arc_key):
            coeffs = [0] * n
            for k, c in mine.get(sides, {}).items():
                coeffs[k] += c
            for k, c in theirs.get(sides, {}).items():
                coeffs[k] -= c
            if any(coeffs):
                equations.append(tuple(coeffs))
                ends = " ".join(sorted(cell_edge_label(s) for s in sides))
                labels.append(f"tet {i} face {f} arc {ends}")

    incompatible = set()
    for i, tr in enumerate(tables):
        for a, b in _incompatible(tr.normal[0].cell.marking) if tr.normal else ():
            incompatible.add((offsets[i] + a, offsets[i] + b))

    rectangles, rect_inc = [], []
    for i, cell in enumerate(ttri.cells):
        for key in cell.rectangles:
            e = key[1]
            rectangles.append((i, e))
            row = []
            for k, (tet, nd) in enumerate(variables):
                row.append(tuple(nd.rectangle_crossings().get(e, ())) if tet == i else ())
            rect_inc.append(tuple(row))

    return MatchingSystem(
        tuple(variables),
        tuple(equations),
        tuple(labels),
        frozenset(incompatible),
        tuple(rectangles),
        tuple(rect_inc),
        ttri,
    )


def rectangle_pattern(v, sys: MatchingSystem, r: int) -> RectanglePattern:
    """Pattern that the vector ``v`` induces on rectangle number ``r``."""
    long_, mer, corners = 0, 0, {}
    for k, crossings in enumerate(sys.rectangle_incidence[r]):
        if not v[k]:
            continue
        for kind, corner in crossings:
            if kind is Crossing.LONGITUDINAL:
                long_ += v[k]
            elif kind is Crossing.MERIDIONAL:
                mer += v[k]
            else:
                corners[corner] = corners.get(corner, 0) + v[k]
    return classify_rectangle(sys.rectangles[r][1], long_, mer, corners)


def is_boundary_restricted(v, sys: MatchingSystem, *, check: bool = True) -> bool:
    if check and not sys.is_solution(v):
        raise ValueError("vector is not a solution of the matching equations")
    return all(rectangle_pattern(v, sys, r).valid for r in range(len(sys.rectangles)))


# -- system files -------------------------------------------------------------


def write_system(sys: MatchingSystem) -> str:
    lines = [f"vars {sys.n}"]
    lines += [f"var {tet} {nd.encoding}" for tet, nd in sys.variables]
    lines += ["eq " + " ".join(map(str, row)) for row in sys.equations]
    lines += [f"incompat {i} {j}" for i, j in sorted(sys.incompatible)]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SystemFile:
    n: int
    labels: tuple[str, ...]
    equations: tuple[tuple[int, ...], ...]
    incompatible: frozenset[tuple[int, int]]


def read_system(text: str) -> SystemFile:
    n, labels, eqs, inc = None, [], [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        word, rest = parts[0], parts[1:]
        try:
            if word == "vars":
                n = int(rest[0])
            elif word == "var":
                labels.append(" ".join(rest))
            elif word == "eq":
                eqs.append(tuple(int(x) for x in rest))
            elif word == "incompat":
                i, j = int(rest[0]), int(rest[1])
                inc.add((min(i, j), max(i, j)))
            else:
                raise ValueError(f"unknown statement {word!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'vars'")
    for row in eqs:
        if len(row) != n:
            raise ValueError(f"equation has {len(row)} coefficients, expected {n}")
    return SystemFile(n, tuple(labels), tuple(eqs), frozenset(inc))
