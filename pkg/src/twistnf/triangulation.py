"""Marked triangulations: data model, file parser, validator and truncation.

Local conventions for a tetrahedron: vertices are ``0..3``, a face is named by
the vertex it omits, and an edge is a sorted vertex pair.
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

VERTICES = (0, 1, 2, 3)
EDGES = tuple(itertools.combinations(VERTICES, 2))
FACES = VERTICES


def face_vertices(f: int) -> tuple[int, int, int]:
    return tuple(v for v in VERTICES if v != f)


def face_edges(f: int) -> tuple[tuple[int, int], ...]:
    a, b, c = face_vertices(f)
    return ((a, b), (b, c), (a, c))


def faces_of_edge(e: tuple[int, int]) -> tuple[int, int]:
    return tuple(f for f in FACES if f not in e)


def faces_of_vertex(v: int) -> tuple[int, int, int]:
    return tuple(f for f in FACES if f != v)


def opposite_edge(e: tuple[int, int]) -> tuple[int, int]:
    return tuple(v for v in VERTICES if v not in e)


def edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class TetrahedronType(enum.Enum):
    """The nine marked tetrahedron types, in the order of the tables."""

    UNMARKED = "unmarked"
    ONE_VERTEX = "one-vertex"
    TWO_VERTICES = "two-vertices"
    THREE_VERTICES = "three-vertices"
    FOUR_VERTICES = "four-vertices"
    ONE_EDGE = "one-edge"
    ONE_EDGE_ONE_VERTEX = "one-edge-one-vertex"
    ONE_EDGE_TWO_VERTICES = "one-edge-two-vertices"
    TWO_EDGES = "two-edges"

    @classmethod
    def parse(cls, name: str) -> "TetrahedronType":
        key = name.strip().lower().replace("_", "-")
        for t in cls:
            if key in (t.value, t.value.replace("-", "")):
                return t
        # CamelCase spellings such as OneEdgeTwoVertices
        camel = re.sub(r"(?<!^)(?=[A-Z])", "-", name.strip()).lower()
        for t in cls:
            if camel == t.value:
                return t
        raise ValueError(f"unknown tetrahedron type {name!r}")

    @property
    def standard_marking(self) -> "TetrahedronMarking":
        return _STANDARD[self]


class MarkingError(ValueError):
    """A marking or triangulation violates a structural invariant."""


@dataclass(frozen=True)
class TetrahedronMarking:
    """Marked vertices and edges of one tetrahedron.

    Endpoints of marked edges are always listed among ``marked_vertices``.
    """

    marked_vertices: frozenset[int] = frozenset()
    marked_edges: frozenset[tuple[int, int]] = frozenset()

    @classmethod
    def of(cls, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()) -> "TetrahedronMarking":
        es = frozenset(edge(*e) for e in edges)
        vs = frozenset(vertices) | {v for e in es for v in e}
        return cls(vs, es)

    def violations(self) -> list[str]:
        out = []
        for v in self.marked_vertices:
            if v not in VERTICES:
                out.append(f"vertex {v} out of range")
        for e in self.marked_edges:
            if e not in EDGES:
                out.append(f"edge {e} is not an edge")
                continue
            for v in e:
                if v not in self.marked_vertices:
                    out.append(f"endpoint {v} of marked edge {e[0]}{e[1]} is not marked")
        for f in FACES:
            inside = [e for e in face_edges(f) if e in self.marked_edges]
            if len(inside) > 1:
                label = "".join(map(str, face_vertices(f)))
                out.append(f"two marked edges in face {label}")
        return out

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise MarkingError("; ".join(problems))

    @property
    def isolated_vertices(self) -> frozenset[int]:
        ends = {v for e in self.marked_edges for v in e}
        return frozenset(self.marked_vertices - ends)

    def edge_through(self, v: int) -> tuple[int, int] | None:
        for e in self.marked_edges:
            if v in e:
                return e
        return None

    def relabel(self, perm: tuple[int, ...]) -> "TetrahedronMarking":
        return TetrahedronMarking(
            frozenset(perm[v] for v in self.marked_vertices),
            frozenset(edge(perm[a], perm[b]) for a, b in self.marked_edges),
        )


_STANDARD = {
    TetrahedronType.UNMARKED: TetrahedronMarking.of(),
    TetrahedronType.ONE_VERTEX: TetrahedronMarking.of([0]),
    TetrahedronType.TWO_VERTICES: TetrahedronMarking.of([0, 1]),
    TetrahedronType.THREE_VERTICES: TetrahedronMarking.of([0, 1, 2]),
    TetrahedronType.FOUR_VERTICES: TetrahedronMarking.of([0, 1, 2, 3]),
    TetrahedronType.ONE_EDGE: TetrahedronMarking.of([], [(0, 1)]),
    TetrahedronType.ONE_EDGE_ONE_VERTEX: TetrahedronMarking.of([2], [(0, 1)]),
    TetrahedronType.ONE_EDGE_TWO_VERTICES: TetrahedronMarking.of([2, 3], [(0, 1)]),
    TetrahedronType.TWO_EDGES: TetrahedronMarking.of([], [(0, 1), (2, 3)]),
}


def classify_marked_tetrahedron(marking: TetrahedronMarking) -> TetrahedronType:
    marking.validate()
    n_edges = len(marking.marked_edges)
    n_iso = len(marking.isolated_vertices)
    if n_edges == 0:
        return list(TetrahedronType)[n_iso]
    if n_edges == 1:
        return list(TetrahedronType)[5 + n_iso]
    return TetrahedronType.TWO_EDGES


# -- triangulations ---------------------------------------------------------


@dataclass(frozen=True)
class Gluing:
    """Face ``face`` of ``tet`` glued to face ``other_face`` of ``other``.

    ``perm`` maps every local vertex of ``tet`` to a local vertex of ``other``;
    the omitted vertex goes to the omitted vertex.
    """

    tet: int
    face: int
    other: int
    other_face: int
    perm: tuple[int, int, int, int]


@dataclass(frozen=True)
class MarkedTriangulation:
    tet_count: int
    gluings: tuple[Gluing, ...] = ()
    marked_edges: frozenset[tuple[int, int, int]] = frozenset()
    marked_vertices: frozenset[tuple[int, int]] = frozenset()
    knots: tuple[tuple[tuple[int, int, int], ...], ...] = ()
    _glue_map: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        # each pair is stored once, from its smaller side, in sorted order
        canon = []
        for g in self.gluings:
            if (g.other, g.other_face) < (g.tet, g.face):
                inv = [0] * 4
                for v, w in enumerate(g.perm):
                    inv[w] = v
                g = Gluing(g.other, g.other_face, g.tet, g.face, tuple(inv))
            canon.append(g)
        object.__setattr__(self, "gluings", tuple(sorted(canon, key=lambda g: (g.tet, g.face, g.other, g.other_face))))
        gm = {}
        for g in self.gluings:
            gm[(g.tet, g.face)] = g
            inv = [0] * 4
            for v, w in enumerate(g.perm):
                inv[w] = v
            gm.setdefault((g.other, g.other_face), Gluing(g.other, g.other_face, g.tet, g.face, tuple(inv)))
        object.__setattr__(self, "_glue_map", gm)

    def glued(self, tet: int, face: int) -> Gluing | None:
        return self._glue_map.get((tet, face))

    # global identification of vertices and edges

    def _classes(self, items, neighbours):
        parent = {x: x for x in items}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in items:
            for y in neighbours(x):
                if y in parent:
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return {x: find(x) for x in items}

    @functools.cached_property
    def vertex_classes(self) -> dict[tuple[int, int], tuple[int, int]]:
        items = [(i, v) for i in range(self.tet_count) for v in VERTICES]

        def nb(x):
            i, v = x
            for f in faces_of_vertex(v):
                g = self.glued(i, f)
                if g:
                    yield (g.other, g.perm[v])

        return self._classes(items, nb)

    @functools.cached_property
    def edge_classes(self) -> dict[tuple[int, tuple[int, int]], tuple[int, tuple[int, int]]]:
        items = [(i, e) for i in range(self.tet_count) for e in EDGES]

        def nb(x):
            i, (a, b) = x
            for f in faces_of_edge((a, b)):
                g = self.glued(i, f)
                if g:
                    yield (g.other, edge(g.perm[a], g.perm[b]))

        return self._classes(items, nb)

    def global_marked_edges(self) -> set:
        ec = self.edge_classes
        return {ec[(i, edge(u, v))] for i, u, v in self.marked_edges}

    def global_marked_vertices(self) -> set:
        vc = self.vertex_classes
        out = {vc[x] for x in self.marked_vertices}
        for i, u, v in self.marked_edges:
            out |= {vc[(i, u)], vc[(i, v)]}
        return out

    def marking(self, tet: int) -> TetrahedronMarking:
        """Local marking induced on ``tet`` by the global link."""
        vc, ec = self.vertex_classes, self.edge_classes
        gv, ge = self.global_marked_vertices(), self.global_marked_edges()
        es = [e for e in EDGES if ec[(tet, e)] in ge]
        vs = [v for v in VERTICES if vc[(tet, v)] in gv]
        return TetrahedronMarking.of(vs, es)

    def tetrahedron_type(self, tet: int) -> TetrahedronType:
        return classify_marked_tetrahedron(self.marking(tet))

    def link_cycles(self) -> list[list]:
        """Components of the link as cyclic lists of global vertex classes."""
        vc, ec = self.vertex_classes, self.edge_classes
        adj: dict = {}
        seen_edges = set()
        for i, u, v in sorted(self.marked_edges):
            key = ec[(i, edge(u, v))]
            if key in seen_edges:
                continue
            seen_edges.add(key)
            a, b = vc[(i, u)], vc[(i, v)]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        cycles, done = [], set()
        for start in sorted(adj):
            if start in done:
                continue
            comp, stack = [], [start]
            while stack:
                x = stack.pop()
                if x in done:
                    continue
                done.add(x)
                comp.append(x)
                stack.extend(adj[x])
            cycles.append(comp)
        return cycles


def validate_marking(tri: MarkedTriangulation) -> list[str]:
    """Every invariant violation of ``tri``, each with its location."""
    report = []
    t = tri.tet_count
    if t < 1:
        return ["tetrahedron count must be positive"]
    seen = {}
    for g in tri.gluings:
        for i, f in ((g.tet, g.face), (g.other, g.other_face)):
            if not (0 <= i < t) or f not in FACES:
                report.append(f"gluing of tet {g.tet} face {g.face}: index out of range")
        if (g.tet, g.face) == (g.other, g.other_face):
            report.append(f"tet {g.tet} face {g.face} glued to itself")
        if sorted(g.perm) != [0, 1, 2, 3] or g.perm[g.face] != g.other_face:
            report.append(f"gluing of tet {g.tet} face {g.face}: vertex map is not a face bijection")
        for side in ((g.tet, g.face), (g.other, g.other_face)):
            if side in seen:
                report.append(f"tet {side[0]} face {side[1]} glued twice")
            seen[side] = g
    if report:
        return report
    for i, u, v in sorted(tri.marked_edges):
        if not (0 <= i < t) or u == v or not {u, v} <= set(VERTICES):
            report.append(f"marked edge {u}{v} of tet {i} is invalid")
    for i, v in sorted(tri.marked_vertices):
        if not (0 <= i < t) or v not in VERTICES:
            report.append(f"marked vertex {v} of tet {i} is invalid")
    if report:
        return report

    vc = tri.vertex_classes
    for i, u, v in sorted(tri.marked_edges):
        if vc[(i, u)] == vc[(i, v)]:
            report.append(f"marked edge {u}{v} of tet {i} is a loop")
    for i in range(t):
        for problem in tri.marking(i).violations():
            report.append(f"tet {i}: {problem}")

    ec = tri.edge_classes
    for cyc in tri.link_cycles():
        degrees = {}
        for i, u, v in tri.marked_edges:
            for x in (vc[(i, u)], vc[(i, v)]):
                if x in cyc:
                    degrees.setdefault(x, set()).add(ec[(i, edge(u, v))])
        bad = [x for x in cyc if len(degrees.get(x, ())) != 2]
        if bad:
            report.append(f"link component through tet {bad[0][0]} vertex {bad[0][1]} is not a cycle")
        elif len(cyc) == 3:
            x = cyc[0]
            report.append(f"triangle component through tet {x[0]} vertex {x[1]}")

    if tri.knots:
        listed = set()
        for k, cyc in enumerate(tri.knots):
            for i, u, v in cyc:
                if not (0 <= i < t) or u == v:
                    report.append(f"knot {k}: bad edge {u}{v} in tet {i}")
                    continue
                listed.add(ec[(i, edge(u, v))])
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                ends_a = {vc[(a[0], a[1])], vc[(a[0], a[2])]}
                ends_b = {vc[(b[0], b[1])], vc[(b[0], b[2])]}
                if not ends_a & ends_b:
                    report.append(f"knot {k}: consecutive edges do not meet")
                    break
        if listed != tri.global_marked_edges():
            report.append("knot cycles disagree with marked edges")
    return report


# -- file format --------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


def _ints(tokens, lineno, count=None):
    out = []
    for tok, col in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected integer, got {tok!r}", lineno, col) from None
    if count is not None and len(out) != count:
        raise ParseError(f"expected {count} integers, got {len(out)}", lineno)
    return out


def _tokenize(line):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_triangulation(text: str) -> MarkedTriangulation:
    """Parse and validate a triangulation file."""
    t = None
    gluings, medges, mverts, knots = [], set(), set(), []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = _tokenize(line)
        if not toks:
            continue
        word = toks[0][0]
        if t is None and word != "tets":
            raise ParseError("first statement must be 'tets'", lineno, toks[0][1])
        if word == "tets":
            if t is not None:
                raise ParseError("duplicate 'tets'", lineno, toks[0][1])
            (t,) = _ints(toks[1:], lineno, 1)
        elif word == "glue":
            i, f, j, g, a, b, c = _ints(toks[1:], lineno, 7)
            if f not in FACES or g not in FACES:
                raise ParseError("face label out of range", lineno)
            perm = [None] * 4
            for src, dst in zip(face_vertices(f), (a, b, c)):
                perm[src] = dst
            perm[f] = g
            gluings.append(Gluing(i, f, j, g, tuple(perm)))
        elif word == "mark":
            if len(toks) < 2 or toks[1][0] not in ("edge", "vertex"):
                raise ParseError("expected 'mark edge' or 'mark vertex'", lineno, toks[0][1])
            if toks[1][0] == "edge":
                i, u, v = _ints(toks[2:], lineno, 3)
                medges.add((i, *edge(u, v)))
            else:
                i, u = _ints(toks[2:], lineno, 2)
                mverts.add((i, u))
        elif word == "knot":
            nums = _ints(toks[1:], lineno)
            if not nums or len(nums) % 3:
                raise ParseError("knot needs triples <tet> <u> <v>", lineno)
            knots.append(tuple((nums[k], *edge(nums[k + 1], nums[k + 2])) for k in range(0, len(nums), 3)))
        else:
            raise ParseError(f"unknown statement {word!r}", lineno, toks[0][1])
    if t is None:
        raise ParseError("missing 'tets'", 1)
    for cyc in knots:
        medges |= set(cyc)
    tri = MarkedTriangulation(t, tuple(gluings), frozenset(medges), frozenset(mverts), tuple(knots))
    problems = validate_marking(tri)
    if problems:
        raise MarkingError("; ".join(problems))
    return tri


def serialize_triangulation(tri: MarkedTriangulation) -> str:
    lines = [f"tets {tri.tet_count}"]
    done = set()
    for (i, f), g in sorted(tri._glue_map.items()):
        if (g.other, g.other_face) in done:
            continue
        done.add((i, f))
        img = " ".join(str(g.perm[v]) for v in face_vertices(f))
        lines.append(f"glue {i} {f} {g.other} {g.other_face} {img}")
    for i, u, v in sorted(tri.marked_edges):
        lines.append(f"mark edge {i} {u} {v}")
    for i, v in sorted(tri.marked_vertices):
        lines.append(f"mark vertex {i} {v}")
    for cyc in tri.knots:
        lines.append("knot " + " ".join(f"{i} {u} {v}" for i, u, v in cyc))
    return "\n".join(lines) + "\n"


# -- truncation ---------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedCell:
    """Combinatorial polyhedron left after truncating one marked tetrahedron.

    Cell vertices are original unmarked vertices ``("v", v)`` and cut points
    ``("p", v, w)`` on edge ``vw`` near the marked vertex ``v``.  Each face is
    a cyclic tuple of cell vertices; face keys are ``("face", f)`` for the
    remnant of an original face, ``("rect", e)`` for the rectangle around a
    marked edge and ``("tri", v)`` for the triangle at an isolated marked
    vertex.
    """

    marking: TetrahedronMarking
    faces: dict

    @property
    def rectangles(self) -> list:
        return [k for k in self.faces if k[0] == "rect"]

    @property
    def vertex_triangles(self) -> list:
        return [k for k in self.faces if k[0] == "tri"]

    def edges(self) -> dict:
        """Cell edges, each mapped to the two faces that contain it."""
        out = {}
        for key, cyc in self.faces.items():
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                out.setdefault(frozenset((a, b)), []).append(key)
        return out


def _point(marking, v, w):
    return ("p", v, w) if v in marking.marked_vertices else ("v", v)


def truncate_tetrahedron(marking: TetrahedronMarking) -> TruncatedCell:
    marking.validate()
    faces = {}
    for f in FACES:
        a, b, c = face_vertices(f)
        cyc = []
        for prev, v, nxt in ((c, a, b), (a, b, c), (b, c, a)):
            if v not in marking.marked_vertices:
                cyc.append(("v", v))
                continue
            for w in (prev, nxt):
                if edge(v, w) not in marking.marked_edges:
                    cyc.append(("p", v, w))
        faces[("face", f)] = tuple(cyc)
    for e in sorted(marking.marked_edges):
        a, b = e
        c, d = opposite_edge(e)
        faces[("rect", e)] = (("p", a, c), ("p", b, c), ("p", b, d), ("p", a, d))
    for v in sorted(marking.isolated_vertices):
        faces[("tri", v)] = tuple(("p", v, w) for w in VERTICES if w != v)
    cell = TruncatedCell(marking, faces)
    if any(len(fs) != 2 for fs in cell.edges().values()):
        raise AssertionError("truncated cell is not a closed polyhedron")
    return cell


@dataclass(frozen=True)
class TruncatedTriangulation:
    triangulation: MarkedTriangulation
    cells: tuple[TruncatedCell, ...]

    @property
    def rectangle_count(self) -> int:
        return sum(len(c.rectangles) for c in self.cells)


def truncate(tri: MarkedTriangulation) -> TruncatedTriangulation:
    return TruncatedTriangulation(tri, tuple(truncate_tetrahedron(tri.marking(i)) for i in range(tri.tet_count)))
