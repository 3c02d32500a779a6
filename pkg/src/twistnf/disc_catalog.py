"""Twisted normal disc types in marked tetrahedra and their truncations.

A disc type is identified with its boundary curve on the tetrahedron's
boundary sphere.  The curve is a cyclic sequence of *nodes* joined by normal
arcs lying in faces.  A node is one of

* ``("V", v)``: the curve passes through the marked vertex ``v``;
* ``("X", e)``: the curve crosses the unmarked edge ``e`` at an interior point;
* ``("M", e, kind, f_lo, f_hi)``: the curve runs along part of the marked edge
  ``e``.  ``kind`` is ``"full"``, ``"int"`` (an interior subarc) or ``"extV"``
  (a subarc containing the endpoint ``V`` only).  ``f_lo`` and ``f_hi`` are the
  faces of the arcs abutting the run at its ends nearer ``e[0]`` and ``e[1]``;
  they record the twist direction.

Locations on the boundary of a face are ``("v", v)`` for a vertex and
``("e", (a, b))`` for an interior point of an edge.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

from .triangulation import (
    EDGES,
    FACES,
    TetrahedronMarking,
    TetrahedronType,
    TruncatedCell,
    edge,
    face_vertices,
    faces_of_edge,
    faces_of_vertex,
    truncate_tetrahedron,
)

MAX_SEARCH_NODES = 8
MAX_SIDES = 6


# -- boundary segments --------------------------------------------------------


def _loc_str(loc) -> str:
    return f"v{loc[1]}" if loc[0] == "v" else f"e{loc[1][0]}{loc[1][1]}"


@dataclass(frozen=True)
class Arc:
    """A normal arc in ``face`` from ``start`` to ``end``."""

    face: int
    start: tuple
    end: tuple

    @property
    def kind(self) -> str:
        n_vertices = (self.start[0] == "v") + (self.end[0] == "v")
        return ("edge-edge", "vertex-edge", "vertex-vertex")[n_vertices]

    def token(self) -> str:
        a, b = sorted((_loc_str(self.start), _loc_str(self.end)))
        return f"f{self.face}:{a}-{b}"


@dataclass(frozen=True)
class EdgeRun:
    """A subarc of the marked edge ``edge`` traversed by the boundary."""

    edge: tuple[int, int]
    kind: str
    face_lo: int
    face_hi: int

    def token(self) -> str:
        a, b = self.edge
        return f"m{a}{b}:{self.kind}:{self.face_lo}{self.face_hi}"


# -- geometric predicates -----------------------------------------------------


def _positions(f):
    a, b, c = face_vertices(f)
    return [("v", a), ("e", (a, b)), ("v", b), ("e", (b, c)), ("v", c), ("e", (a, c))]


_POS = {f: {loc: i for i, loc in enumerate(_positions(f))} for f in FACES}


def is_normal_arc(face: int, p, q, marked_vertices) -> bool:
    if p == q or p not in _POS[face] or q not in _POS[face]:
        return False
    if p[0] == "v" and q[0] == "v":
        return p[1] in marked_vertices and q[1] in marked_vertices
    if p[0] == "e" and q[0] == "e":
        return True
    v, e = (p[1], q[1]) if p[0] == "v" else (q[1], p[1])
    return v in marked_vertices and v not in e


def _crosses(f, a1, a2) -> bool:
    pos = _POS[f]
    i, j = sorted((pos[a1[0]], pos[a1[1]]))
    k, l = pos[a2[0]], pos[a2[1]]
    if len({i, j, k, l}) < 4:
        return True
    return (i < k < j) != (i < l < j)


# -- the search ---------------------------------------------------------------


class _Search:
    """Depth-first search for closed boundary curves of one marking."""

    def __init__(self, marking: TetrahedronMarking):
        self.mv = marking.marked_vertices
        self.me = marking.marked_edges
        self.through = {v: e for e in self.me for v in e}
        self.found: dict[tuple, list] = {}

    # A traversal is (node, node_id, resources, exit_location, exit_face).
    def traversals(self, loc, f_in):
        out = []
        if loc[0] == "v":
            v = loc[1]
            if v not in self.mv:
                return out
            for fo in faces_of_vertex(v):
                if fo != f_in:
                    out.append((("V", v), ("V", v), {("v", v)}, loc, fo))
            e = self.through.get(v)
            if e:
                w = e[0] + e[1] - v
                for fo in faces_of_vertex(w):
                    if fo != f_in:
                        out.append((self._run(e, "full", v, f_in, fo), ("M", e), {("v", v), ("v", w)}, ("v", w), fo))
                for fo in faces_of_edge(e):
                    if fo != f_in:
                        out.append((self._run(e, f"ext{v}", v, f_in, fo), ("M", e), {("v", v)}, ("e", e), fo))
            return out
        e = loc[1]
        (fo,) = [f for f in faces_of_edge(e) if f != f_in]
        if e not in self.me:
            out.append((("X", e), ("X", e), set(), loc, fo))
            return out
        for v in e:
            w = e[0] + e[1] - v
            out.append((self._run(e, "int", v, f_in, fo), ("M", e), set(), loc, fo))
            for fw in faces_of_vertex(w):
                if fw != f_in:
                    out.append((self._run(e, f"ext{w}", v, f_in, fw), ("M", e), {("v", w)}, ("v", w), fw))
        return out

    @staticmethod
    def _run(e, kind, near, f_near, f_far):
        ends = {near: f_near, e[0] + e[1] - near: f_far}
        return ("M", e, kind, ends[e[0]], ends[e[1]])

    def run(self):
        locs = [("v", v) for v in sorted(self.mv)] + [("e", e) for e in EDGES]
        for loc in locs:
            for f in FACES:
                if _positions(f).count(loc) == 0:
                    continue
                for tr in self.traversals(loc, f):
                    self._dfs([tr], (loc, f), tr[1], {tr[1]}, set(tr[2]), [], {})
        return self.found

    def _dfs(self, stops, start, start_id, ids, res, arcs, by_face):
        if len(stops) > MAX_SEARCH_NODES:
            return
        node, _, _, loc, f = stops[-1]
        for loc2 in _positions(f):
            if not is_normal_arc(f, loc, loc2, self.mv):
                continue
            arc = (loc, loc2)
            placed = by_face.get(f, [])
            if any(_crosses(f, arc, other) for other in placed):
                continue
            new_by_face = {**by_face, f: placed + [arc]}
            if (loc2, f) == start:
                self._finish(stops, arcs + [(f, loc, loc2)], new_by_face)
                continue
            for tr in self.traversals(loc2, f):
                if tr[1] in ids or tr[1] < start_id or tr[2] & res:
                    continue
                self._dfs(stops + [tr], start, start_id, ids | {tr[1]}, res | tr[2], arcs + [(f, loc, loc2)], new_by_face)

    def _finish(self, stops, arcs, by_face):
        nodes = [s[0] for s in stops]
        on_vertex = {r[1] for s in stops for r in s[2]}
        crossed = {n[1] for n in nodes if n[0] == "X"}
        runs = {n[1]: n for n in nodes if n[0] == "M"}
        # The vertex end of an exterior subarc does not count against the
        # unmarked edges met by the curve.
        exempt = {int(n[2][3:]) for n in runs.values() if n[2].startswith("ext")}
        for e in crossed:
            if any(v in on_vertex and v not in exempt for v in e):
                return
        for e in self.me:
            a, b = e
            run = runs.get(e)
            if run is None:
                if a in on_vertex and b in on_vertex:
                    return
            elif run[2] == "int":
                if a in on_vertex or b in on_vertex:
                    return
            elif run[2].startswith("ext"):
                if a + b - int(run[2][3:]) in on_vertex:
                    return
            elif run[3] in faces_of_edge(e) and run[4] in faces_of_edge(e):
                # a full run may not leave the edge into its own faces at both ends
                return
        for f, placed in by_face.items():
            ends = [p for arc in placed for p in arc]
            if len(ends) != len(set(ends)):
                return
        segments = []
        for node, (f, p, q) in zip(nodes, arcs):
            if node[0] == "M":
                segments.append(EdgeRun(node[1], node[2], node[3], node[4]))
            segments.append(Arc(f, p, q))
        key = canonical_tokens([s.token() for s in segments])
        self.found.setdefault(key, segments)


def canonical_tokens(tokens: list[str]) -> tuple[str, ...]:
    """Lexicographically least rotation or reflection of a cyclic sequence."""
    n = len(tokens)
    best = None
    for seq in (tokens, tokens[::-1]):
        for i in range(n):
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
    return best


# -- disc types ---------------------------------------------------------------


@dataclass(frozen=True)
class TwistedDiscType:
    """Boundary pattern of a twisted normal disc.

    ``segments`` is one oriented traversal of the boundary; ``encoding`` is
    the canonical form, invariant under rotation and reversal.
    """

    marking: TetrahedronMarking
    segments: tuple
    encoding: str

    @property
    def arcs(self) -> list[Arc]:
        return [s for s in self.segments if isinstance(s, Arc)]

    @property
    def runs(self) -> list[EdgeRun]:
        return [s for s in self.segments if isinstance(s, EdgeRun)]

    @property
    def touched_vertices(self) -> set[int]:
        out = {loc[1] for a in self.arcs for loc in (a.start, a.end) if loc[0] == "v"}
        for r in self.runs:
            if r.kind == "full":
                out |= set(r.edge)
            elif r.kind.startswith("ext"):
                out.add(int(r.kind[3:]))
        return out

    def __str__(self):
        return self.encoding


def sides(d: TwistedDiscType) -> int:
    return len(d.segments)


def fan_triangulation(d: TwistedDiscType | int) -> list[tuple[int, int, int]]:
    """Fan triangles over the polygon with ``sides(d)`` corners.

    A bigon gets one triangle with an extra corner on one of its sides.
    """
    n = d if isinstance(d, int) else sides(d)
    if n < 3:
        return [(0, 1, 2)]
    return [(0, i, i + 1) for i in range(1, n - 1)]


@functools.lru_cache(maxsize=None)
def _catalog(marking: TetrahedronMarking) -> tuple[TwistedDiscType, ...]:
    found = _Search(marking).run()
    out = [TwistedDiscType(marking, tuple(segs), ",".join(key)) for key, segs in found.items()]
    out.sort(key=lambda d: d.encoding)
    worst = max((sides(d) for d in out), default=0)
    if worst > MAX_SIDES:
        raise AssertionError(f"disc type with {worst} sides; the boundary model has drifted")
    return tuple(out)


def _as_marking(t) -> TetrahedronMarking:
    if isinstance(t, TetrahedronMarking):
        return t
    if isinstance(t, str):
        t = TetrahedronType.parse(t)
    return t.standard_marking


def enumerate_twisted_discs(t: TetrahedronType | TetrahedronMarking | str) -> list[TwistedDiscType]:
    """All twisted normal disc types of a marked tetrahedron, sorted by encoding."""
    return list(_catalog(_as_marking(t)))


# -- families -----------------------------------------------------------------


def is_new(d: TwistedDiscType) -> bool:
    """Whether ``d`` uses the marking features that distinguish its tetrahedron.

    With isolated marked vertices, a new type touches all of them; otherwise
    it runs along every marked edge.  Every type of an unmarked tetrahedron
    counts as new.
    """
    m = d.marking
    if m.isolated_vertices:
        return set(m.isolated_vertices) <= d.touched_vertices
    return {r.edge for r in d.runs} >= set(m.marked_edges)


def new_discs(t) -> list[TwistedDiscType]:
    return [d for d in _catalog(_as_marking(t)) if is_new(d)]


def _no_runs(d):
    return not d.runs


def _count_kind(d, kind):
    return sum(1 for a in d.arcs if a.kind == kind)


def _touches_once(d):
    """Two vertex-edge arcs meeting at one vertex, closed by an edge-edge arc."""
    ve = [a for a in d.arcs if a.kind == "vertex-edge"]
    if len(ve) != 2 or _count_kind(d, "edge-edge") != 1:
        return False
    return len({loc for a in ve for loc in (a.start, a.end) if loc[0] == "v"}) == 1


FAMILIES = {
    "corner-triangle": lambda d: _no_runs(d) and len(d.arcs) == 3 and _count_kind(d, "edge-edge") == 3,
    "quad": lambda d: _no_runs(d) and len(d.arcs) == 4 and _count_kind(d, "edge-edge") == 4,
    "vertex-touching-triangle": lambda d: _no_runs(d) and len(d.arcs) == 3 and _touches_once(d),
    "bigon": lambda d: _no_runs(d) and len(d.arcs) == 2,
    "triangle-one-vv": lambda d: _no_runs(d) and len(d.arcs) == 3 and _count_kind(d, "vertex-vertex") == 1,
    "triangle-all-vv": lambda d: _no_runs(d) and len(d.arcs) == 3 and _count_kind(d, "vertex-vertex") == 3,
    "quad-all-vv": lambda d: _no_runs(d) and len(d.arcs) == 4 and _count_kind(d, "vertex-vertex") == 4,
    "full-edge": lambda d: any(r.kind == "full" for r in d.runs),
    "interior-subarc": lambda d: any(r.kind == "int" for r in d.runs),
    "exterior-subarc": lambda d: any(r.kind.startswith("ext") for r in d.runs),
    "edge-run": lambda d: bool(d.runs),
    "all": lambda d: True,
}


def family_of(name: str):
    """Predicate for a family name, optionally suffixed by ``/<sides>``.

    ``"exterior-subarc/5"`` selects exterior-subarc users with five sides.
    """
    base, _, n = name.partition("/")
    if base not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    pred = FAMILIES[base]
    if not n:
        return pred
    k = int(n)
    return lambda d: pred(d) and sides(d) == k


def subcount(t, family: str, *, new: bool = False) -> int:
    """Number of disc types of ``t`` in ``family``; ``new`` drops inherited types."""
    pred = family_of(family)
    pool = new_discs(t) if new else enumerate_twisted_discs(t)
    return sum(1 for d in pool if pred(d))


# -- truncation ---------------------------------------------------------------


def _side(cell: TruncatedCell, f: int, loc) -> frozenset:
    """The cell edge on the remnant of face ``f`` where a boundary location lands."""
    m = cell.marking
    a, b, c = face_vertices(f)

    def pt(v, w):
        return ("p", v, w) if v in m.marked_vertices else ("v", v)

    def long_side(e):
        (third,) = {a, b, c} - set(e)
        return frozenset({("p", e[0], third), ("p", e[1], third)})

    if loc[0] == "e":
        e = loc[1]
        if e in m.marked_edges:
            return long_side(e)
        return frozenset({pt(e[0], e[1]), pt(e[1], e[0])})
    v = loc[1]
    e = m.edge_through(v)
    if e is not None and set(e) <= {a, b, c}:
        return long_side(e)
    w1, w2 = [x for x in (a, b, c) if x != v]
    return frozenset({("p", v, w1), ("p", v, w2)})


def cell_edge_label(ce: frozenset) -> str:
    def lab(x):
        return f"v{x[1]}" if x[0] == "v" else f"p{x[1]}{x[2]}"

    return "|".join(sorted(lab(x) for x in ce))


def _face_label(key) -> str:
    if key[0] == "face":
        return f"F{key[1]}"
    if key[0] == "rect":
        return f"R{key[1][0]}{key[1][1]}"
    return f"T{key[1]}"


@dataclass(frozen=True)
class CellArc:
    """An arc of a truncated disc boundary inside one face of the cell."""

    face: tuple
    start: frozenset
    end: frozenset

    @property
    def sides(self) -> frozenset:
        return frozenset((self.start, self.end))


class Crossing(enum.Enum):
    LONGITUDINAL = "longitudinal"
    MERIDIONAL = "meridional"
    CORNER = "corner"


@dataclass(frozen=True)
class NormalDiscType:
    """Boundary pattern of a normal disc in a truncated tetrahedron.

    ``arcs`` is one oriented traversal of the boundary as arcs in cell faces.
    The disc is determined by the set of cell edges it crosses, which is
    ``crossed``.
    """

    cell: TruncatedCell
    arcs: tuple[CellArc, ...]
    encoding: str

    @property
    def crossed(self) -> frozenset:
        return frozenset(a.start for a in self.arcs)

    def face_arcs(self) -> list[CellArc]:
        """Arcs lying on remnants of original faces."""
        return [a for a in self.arcs if a.face[0] == "face"]

    def rectangle_crossings(self) -> dict:
        """Per rectangle, the list of ``(Crossing, corner)`` pieces of the boundary."""
        out = {}
        for a in self.arcs:
            if a.face[0] != "rect":
                continue
            e = a.face[1]
            out.setdefault(e, []).append(classify_rectangle_arc(e, a.start, a.end))
        return out

    def __str__(self):
        return self.encoding


def classify_rectangle_arc(e, s1: frozenset, s2: frozenset):
    """Crossing kind of an arc in the rectangle around ``e`` between two sides.

    Long sides have both corners at cut points on one face, short sides have
    both corners near one endpoint of ``e``.  The corner of a corner-cutting
    arc is the rectangle vertex shared by its two sides.
    """

    def is_short(s):
        return len({x[1] for x in s}) == 1

    k1, k2 = is_short(s1), is_short(s2)
    if k1 and k2:
        return (Crossing.LONGITUDINAL, None)
    if not k1 and not k2:
        return (Crossing.MERIDIONAL, None)
    (corner,) = s1 & s2
    return (Crossing.CORNER, corner)


def cell_curve(d: TwistedDiscType, cell: TruncatedCell | None = None) -> tuple[CellArc, ...]:
    """Restriction of a twisted disc boundary to the truncated cell."""
    cell = cell or truncate_tetrahedron(d.marking)
    arcs = d.arcs
    pieces = []
    for i, arc in enumerate(arcs):
        s_in, s_out = _side(cell, arc.face, arc.start), _side(cell, arc.face, arc.end)
        pieces.append(CellArc(("face", arc.face), s_in, s_out))
        nxt = arcs[(i + 1) % len(arcs)]
        s_next = _side(cell, nxt.face, nxt.start)
        if s_next != s_out:
            owner = [k for k, cyc in cell.faces.items() if k[0] != "face" and _has_side(cyc, s_out) and _has_side(cyc, s_next)]
            if len(owner) != 1:
                raise AssertionError(f"no truncation face joins {sorted(s_out)} and {sorted(s_next)}")
            pieces.append(CellArc(owner[0], s_out, s_next))
    return tuple(pieces)


def _has_side(cyc, s) -> bool:
    return any(frozenset((a, b)) == s for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def _normal_encoding(arcs) -> str:
    toks = [f"{_face_label(a.face)}[{cell_edge_label(a.start)}]" for a in arcs]
    return ",".join(canonical_tokens(toks))


@dataclass(frozen=True)
class Truncation:
    """Quotient of a twisted catalog onto normal disc types."""

    twisted: tuple[TwistedDiscType, ...]
    normal: tuple[NormalDiscType, ...]
    image: tuple[int, ...]

    def preimages(self, k: int) -> list[TwistedDiscType]:
        return [d for d, j in zip(self.twisted, self.image) if j == k]


@functools.lru_cache(maxsize=None)
def _truncation(marking: TetrahedronMarking) -> Truncation:
    cell = truncate_tetrahedron(marking)
    twisted = _catalog(marking)
    by_bond: dict[frozenset, NormalDiscType] = {}
    keys = []
    for d in twisted:
        arcs = cell_curve(d, cell)
        bond = frozenset(a.start for a in arcs)
        if len(bond) != len(arcs):
            raise AssertionError(f"{d} crosses a cell edge twice")
        if bond not in by_bond:
            by_bond[bond] = NormalDiscType(cell, arcs, _normal_encoding(arcs))
        keys.append(bond)
    normal = sorted(by_bond.values(), key=lambda n: n.encoding)
    index = {n.crossed: i for i, n in enumerate(normal)}
    return Truncation(twisted, tuple(normal), tuple(index[k] for k in keys))


def truncate_disc_types(t) -> tuple[list[NormalDiscType], list[int]]:
    """Normal disc types of the truncated cell and the surjection onto them.

    The second value maps the i-th twisted type of
    :func:`enumerate_twisted_discs` to an index into the first.
    """
    tr = _truncation(_as_marking(t))
    return list(tr.normal), list(tr.image)


def truncation(t) -> Truncation:
    return _truncation(_as_marking(t))


def arc_incidence(t, *, arcs: str = "all") -> dict[tuple, list[int]]:
    """For every arc type on a face remnant, its multiplicity per normal type.

    ``arcs="normal"`` keeps only arcs running between two remnants of
    tetrahedron edges; ``"all"`` also keeps arcs ending on truncation faces.
    """
    if arcs not in ("all", "normal"):
        raise ValueError(f"arcs must be 'all' or 'normal', not {arcs!r}")
    normal = _truncation(_as_marking(t)).normal
    out: dict[tuple, list[int]] = {}
    for k, n in enumerate(normal):
        sides_of = n.cell.edges()
        for a in n.face_arcs():
            if arcs == "normal" and not all(_on_tet_edge(sides_of[s]) for s in a.sides):
                continue
            key = (a.face[1], a.sides)
            out.setdefault(key, [0] * len(normal))[k] += 1
    return out


def _on_tet_edge(faces) -> bool:
    return faces[0][0] == "face" and faces[1][0] == "face"


def max_common_arc_count(t, *, arcs: str = "normal") -> int:
    """Largest number of normal disc types sharing one arc type on a face remnant."""
    inc = arc_incidence(t, arcs=arcs)
    return max((sum(1 for c in row if c) for row in inc.values()), default=0)


# -- curves in a face ---------------------------------------------------------


class FaceCurveClass(enum.Enum):
    NORMAL = "normal"
    MONOGON = "monogon"
    DCURVE = "D-curve"


def classify_face_arc(face: int, start, end, marked_vertices: Iterable[int] = ()) -> FaceCurveClass:
    """Classify a properly embedded arc in a face by its endpoints.

    Endpoints are ``("v", v)`` or ``("e", (a, b))``; both must lie on the
    boundary of ``face``.
    """
    mv = set(marked_vertices)
    start = ("e", edge(*start[1])) if start[0] == "e" else start
    end = ("e", edge(*end[1])) if end[0] == "e" else end
    for p in (start, end):
        if p not in _POS[face]:
            raise ValueError(f"endpoint {p} is not on the boundary of face {face}")
    if start == end and start[0] == "v" and start[1] in mv:
        return FaceCurveClass.MONOGON
    if start != end and is_normal_arc(face, start, end, mv):
        return FaceCurveClass.NORMAL
    return FaceCurveClass.DCURVE


# -- tables -------------------------------------------------------------------

TABLE_ROWS = list(TetrahedronType)


def table1() -> list[tuple[TetrahedronType, int]]:
    return [(t, len(enumerate_twisted_discs(t))) for t in TABLE_ROWS]


def table2() -> list[tuple[TetrahedronType, int, int]]:
    return [(t, len(truncation(t).normal), max_common_arc_count(t)) for t in TABLE_ROWS]
