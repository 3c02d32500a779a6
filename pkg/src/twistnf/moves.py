"""Collapsing the boundary of a triangulated disc by elementary moves.

A disc is given abstractly as a list of vertex triples.  Its boundary is
pushed inward one triangle at a time; each step is recorded as a rewrite of
the boundary cycle that names the triangle it sweeps across.
"""

from __future__ import annotations

import enum
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence


class NotADisc(ValueError):
    """The complex is not a triangulated disc."""


def _e(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class DiscComplex:
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))
        problems = self.violations()
        if problems:
            raise NotADisc(problems[0])

    @property
    def w(self) -> int:
        return len(self.triangles)

    @property
    def vertices(self) -> set:
        return {v for t in self.triangles for v in t}

    def edge_counts(self) -> Counter:
        return Counter(_e(a, b) for a, b, c in self.triangles for a, b in ((a, b), (b, c), (c, a)))

    def violations(self) -> list[str]:
        tris = self.triangles
        if not tris:
            return ["empty complex"]
        for t in tris:
            if len(t) != 3 or len(set(t)) != 3:
                return [f"degenerate triangle {t}"]
        if len({frozenset(t) for t in tris}) != len(tris):
            return ["repeated triangle"]
        counts = self.edge_counts()
        over = [tuple(sorted(e)) for e, n in counts.items() if n > 2]
        if over:
            return [f"edge {over[0]} lies in more than two triangles"]
        if not _connected(tris):
            return ["not connected"]
        for v, ok in _vertex_links(tris).items():
            if not ok:
                return [f"vertex {v} is singular"]
        boundary = [e for e, n in counts.items() if n == 1]
        if not boundary:
            return ["no boundary"]
        chi = len(self.vertices) - len(counts) + len(tris)
        if chi != 1:
            return [f"Euler characteristic {chi}, expected 1"]
        if len(_cycles(boundary)) != 1:
            return ["boundary is not a single cycle"]
        return []

    def boundary_cycle(self) -> tuple:
        counts = self.edge_counts()
        return _cycles([e for e, n in counts.items() if n == 1])[0]


def _connected(tris) -> bool:
    by_vertex = defaultdict(list)
    for i, t in enumerate(tris):
        for v in t:
            by_vertex[v].append(i)
    seen, stack = {0}, [0]
    while stack:
        for v in tris[stack.pop()]:
            for j in by_vertex[v]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(tris)


def _vertex_links(tris) -> dict:
    """Per vertex: whether its link is a single path or a single cycle."""
    links = defaultdict(list)
    for a, b, c in tris:
        links[a].append((b, c))
        links[b].append((c, a))
        links[c].append((a, b))
    out = {}
    for v, segs in links.items():
        deg = Counter(x for s in segs for x in s)
        if any(d > 2 for d in deg.values()):
            out[v] = False
            continue
        comps = _cycles([_e(*s) for s in segs], allow_paths=True)
        out[v] = len(comps) == 1
    return out


def _cycles(edges, allow_paths: bool = False) -> list[tuple]:
    """Components of a graph of maximum degree 2, each as a vertex sequence."""
    adj = defaultdict(list)
    for e in edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    if any(len(n) > 2 for n in adj.values()):
        return [(), ()]
    if not allow_paths and any(len(n) != 2 for n in adj.values()):
        return [(), ()]
    seen, out = set(), []
    starts = sorted(adj, key=lambda v: (len(adj[v]), v))
    for s in starts:
        if s in seen:
            continue
        walk, prev, cur = [s], None, s
        seen.add(s)
        while True:
            nxt = [x for x in adj[cur] if x != prev and x not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            walk.append(cur)
        out.append(tuple(walk))
    return out


# -- moves and certificates ---------------------------------------------------


class MoveKind(enum.Enum):
    INSERT_VERTEX = "insert"
    REMOVE_VERTEX = "remove"
    TRIANGLE_SLIDE = "slide"
    TRIANGLE_SLIDE_INVERSE = "unslide"


@dataclass(frozen=True)
class ElementaryMove:
    """One rewrite of the boundary cycle.

    ``slide a c b``: the path a, c, b becomes the edge a, b across triangle acb.
    ``unslide a b c``: the edge a, b becomes the path a, c, b across triangle abc.
    ``insert a b m``: a new vertex m splits the edge a, b.
    ``remove v``: an inserted vertex v is dropped from the cycle.
    """

    kind: MoveKind
    args: tuple[int, ...]

    @property
    def triangle(self) -> frozenset | None:
        if self.kind in (MoveKind.TRIANGLE_SLIDE, MoveKind.TRIANGLE_SLIDE_INVERSE):
            return frozenset(self.args)
        return None

    def __str__(self) -> str:
        return " ".join([self.kind.value, *map(str, self.args)])


@dataclass(frozen=True)
class MoveCertificate:
    initial: tuple[int, ...]
    moves: tuple[ElementaryMove, ...]
    final: tuple[int, ...]

    def counts(self) -> Counter:
        return Counter(m.kind for m in self.moves)


def _removable(t, boundary_edges, boundary_vertices: Counter) -> tuple | None:
    """The move that sweeps across ``t``, if removing it leaves a disc."""
    on = [(x, y, z) for x, y, z in ((t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])) if _e(x, y) in boundary_edges]
    if len(on) == 1:
        a, b, c = on[0]
        if not boundary_vertices[c]:
            return (MoveKind.TRIANGLE_SLIDE_INVERSE, (a, b, c))
    elif len(on) == 2:
        # the vertex shared by both boundary edges is the apex
        apex = next(v for v in t if sum(v in (x, y) for x, y, _ in on) == 2)
        a, b = (v for v in t if v != apex)
        return (MoveKind.TRIANGLE_SLIDE, (a, apex, b))
    return None


def shelling_order(d: DiscComplex) -> list[tuple[int, int, int]]:
    """Triangles in removal order; every proper suffix is a disc."""
    return [t for t, _ in _shell(d)]


def _shell(d: DiscComplex) -> list[tuple[tuple, tuple | None]]:
    tris = list(d.triangles)
    of_edge = defaultdict(set)
    for i, t in enumerate(tris):
        for x, y in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            of_edge[_e(x, y)].add(i)
    alive = set(range(len(tris)))
    boundary = {e for e, s in of_edge.items() if len(s) == 1}
    bverts = Counter(v for e in boundary for v in e)

    def refresh(i):
        t = tris[i]
        for x, y in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            e = _e(x, y)
            live = sum(j in alive for j in of_edge[e])
            was = e in boundary
            now = live == 1
            if was and not now:
                boundary.discard(e)
                for v in e:
                    bverts[v] -= 1
            elif now and not was:
                boundary.add(e)
                for v in e:
                    bverts[v] += 1

    order = []
    # depth-first with backtracking; a triangulated disc never needs it, but a
    # stuck greedy step then fails loudly instead of looping
    tried: list[set] = [set()]
    while len(alive) > 1:
        choice = None
        for e in sorted(boundary, key=lambda e: sorted(e)):
            (i,) = [j for j in of_edge[e] if j in alive]
            if i in tried[-1]:
                continue
            move = _removable(tris[i], boundary, bverts)
            if move:
                choice = (i, move)
                break
        if choice is None:
            if not order:
                raise NotADisc("no removable triangle")
            i, _ = order.pop()
            tried.pop()
            alive.add(i)
            refresh(i)
            continue
        i, move = choice
        tried[-1].add(i)
        tried.append(set())
        alive.discard(i)
        refresh(i)
        order.append((i, move))
    (last,) = alive
    return [(tris[i], m) for i, m in order] + [(tris[last], None)]


def collapse_certificate(d: DiscComplex) -> MoveCertificate:
    """Moves pushing the boundary of ``d`` onto its last shelled triangle."""
    initial = d.boundary_cycle()
    steps = _shell(d)
    moves = tuple(ElementaryMove(kind, args) for _, (kind, args) in steps[:-1])
    cycle = _replay(initial, moves, {frozenset(t) for t in d.triangles})
    if isinstance(cycle, str):
        raise AssertionError(f"generated certificate does not replay: {cycle}")
    return MoveCertificate(tuple(initial), moves, cycle)


def _follows(cycle: list, i: int, v) -> bool:
    return cycle[(i + 1) % len(cycle)] == v


def _replay(initial: Sequence[int], moves: Iterable[ElementaryMove], triangles: set) -> tuple | str:
    """Final cycle, or a diagnostic string for the first illegal step."""
    cycle = list(initial)
    if len(set(cycle)) != len(cycle) or len(cycle) < 3:
        return "initial cycle is not simple"
    remaining = set(triangles)
    inserted = set()
    for k, m in enumerate(moves):
        pos = {v: i for i, v in enumerate(cycle)}
        where = f"move {k + 1} ({m})"
        if m.kind in (MoveKind.TRIANGLE_SLIDE, MoveKind.TRIANGLE_SLIDE_INVERSE):
            if len(set(m.args)) != 3:
                return f"{where}: degenerate triangle"
            if m.triangle not in remaining:
                return f"{where}: triangle not in the disc"
        if m.kind is MoveKind.TRIANGLE_SLIDE:
            a, c, b = m.args
            if c not in pos or a not in pos or b not in pos:
                return f"{where}: path not on the cycle"
            i = pos[c]
            nbrs = {cycle[i - 1], cycle[(i + 1) % len(cycle)]}
            if nbrs != {a, b} or len(cycle) <= 3:
                return f"{where}: path not on the cycle"
            del cycle[i]
            remaining.discard(m.triangle)
        elif m.kind is MoveKind.TRIANGLE_SLIDE_INVERSE:
            a, b, c = m.args
            if c in pos:
                return f"{where}: apex already on the cycle"
            if a not in pos or b not in pos:
                return f"{where}: edge not on the cycle"
            i, j = pos[a], pos[b]
            if _follows(cycle, i, b):
                cycle.insert(i + 1, c)
            elif _follows(cycle, j, a):
                cycle.insert(j + 1, c)
            else:
                return f"{where}: edge not on the cycle"
            remaining.discard(m.triangle)
        elif m.kind is MoveKind.INSERT_VERTEX:
            a, b, v = m.args
            if v in pos or v in {x for t in triangles for x in t} or v in inserted:
                return f"{where}: vertex is not new"
            i, j = pos.get(a), pos.get(b)
            if i is None or j is None:
                return f"{where}: edge not on the cycle"
            if _follows(cycle, i, b):
                cycle.insert(i + 1, v)
            elif _follows(cycle, j, a):
                cycle.insert(j + 1, v)
            else:
                return f"{where}: edge not on the cycle"
            inserted.add(v)
        elif m.kind is MoveKind.REMOVE_VERTEX:
            (v,) = m.args
            if v not in inserted or v not in pos:
                return f"{where}: only inserted vertices can be removed"
            del cycle[pos[v]]
            inserted.discard(v)
        if len(cycle) < 3 or len(set(cycle)) != len(cycle):
            return f"{where}: cycle is no longer simple"
    return tuple(cycle)


def _same_cycle(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    i = list(b).index(a[0])
    rot = list(b[i:]) + list(b[:i])
    return list(a) == rot or list(a) == [rot[0]] + rot[1:][::-1]


@dataclass
class Validation:
    ok: bool
    reason: str = ""
    moves: int = 0
    budget: int = 0

    def __bool__(self) -> bool:
        return self.ok


def validate_certificate(c: MoveCertificate, d: DiscComplex) -> Validation:
    budget = 2 * d.w
    if not _same_cycle(c.initial, d.boundary_cycle()):
        return Validation(False, "initial cycle is not the boundary of the disc", len(c.moves), budget)
    if len(c.moves) > budget:
        return Validation(False, "budget exceeded", len(c.moves), budget)
    out = _replay(c.initial, c.moves, {frozenset(t) for t in d.triangles})
    if isinstance(out, str):
        return Validation(False, out, len(c.moves), budget)
    if not _same_cycle(out, c.final):
        return Validation(False, "replay does not end at the recorded final cycle", len(c.moves), budget)
    if len(out) != 3 or frozenset(out) not in {frozenset(t) for t in d.triangles}:
        return Validation(False, "final cycle is not a triangle of the disc", len(c.moves), budget)
    return Validation(True, "", len(c.moves), budget)


# -- random discs -------------------------------------------------------------


def random_disc(w: int, rng: random.Random | None = None) -> DiscComplex:
    """A random triangulated disc with ``w`` triangles.

    Grows from one triangle, either gluing a triangle with a fresh vertex onto
    a boundary edge or filling the notch at a boundary vertex.
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    rng = rng or random.Random()
    tris = [(0, 1, 2)]
    cycle = [0, 1, 2]
    edges = {_e(0, 1), _e(1, 2), _e(0, 2)}
    nxt = 3
    while len(tris) < w:
        n = len(cycle)
        i = rng.randrange(n)
        a, v, b = cycle[i - 1], cycle[i], cycle[(i + 1) % n]
        if n > 3 and _e(a, b) not in edges and rng.random() < 0.4:
            tris.append((a, v, b))
            edges.add(_e(a, b))
            del cycle[i]
            continue
        tris.append((v, nxt, b))
        edges |= {_e(v, nxt), _e(nxt, b)}
        cycle.insert(i + 1, nxt)
        nxt += 1
    return DiscComplex(tuple(tris))


# -- files --------------------------------------------------------------------


def read_disc(text: str) -> DiscComplex:
    count, tris = None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "triangles":
                count = int(parts[1])
            elif parts[0] == "tri":
                a, b, c = (int(x) for x in parts[1:])
                tris.append((a, b, c))
            else:
                raise ValueError(f"unknown statement {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if count is None:
        raise ValueError("missing 'triangles'")
    if count != len(tris):
        raise ValueError(f"declared {count} triangles, found {len(tris)}")
    return DiscComplex(tuple(tris))


def write_disc(d: DiscComplex) -> str:
    return "".join([f"triangles {d.w}\n", *(f"tri {a} {b} {c}\n" for a, b, c in d.triangles)])


def write_certificate(c: MoveCertificate) -> str:
    lines = ["initial " + " ".join(map(str, c.initial))]
    lines += [f"move {m}" for m in c.moves]
    lines.append("final " + " ".join(map(str, c.final)))
    return "\n".join(lines) + "\n"


def read_certificate(text: str) -> MoveCertificate:
    initial, final, moves = None, None, []
    kinds = {k.value: k for k in MoveKind}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "initial":
                initial = tuple(int(x) for x in parts[1:])
            elif parts[0] == "final":
                final = tuple(int(x) for x in parts[1:])
            elif parts[0] == "move":
                kind = kinds[parts[1]]
                args = tuple(int(x) for x in parts[2:])
                if len(args) != (1 if kind is MoveKind.REMOVE_VERTEX else 3):
                    raise ValueError(f"wrong argument count for {kind.value}")
                moves.append(ElementaryMove(kind, args))
            else:
                raise ValueError(f"unknown statement {parts[0]!r}")
        except (IndexError, KeyError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if initial is None or final is None:
        raise ValueError("certificate needs 'initial' and 'final' lines")
    return MoveCertificate(initial, tuple(moves), final)
