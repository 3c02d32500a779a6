"""Independent brute-force references for the Hilbert basis tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def rank(rows) -> int:
    m = [[Fraction(c) for c in row] for row in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def det(mat) -> int:
    """Exact determinant by fraction-valued elimination."""
    m = [[Fraction(c) for c in row] for row in mat]
    out = Fraction(1)
    for c in range(len(m)):
        pivot = next((i for i in range(c, len(m)) if m[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, len(m)):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return int(out)


def coordinate_box(rows, n) -> int:
    """Per-coordinate bound on irreducible solutions of ``A x = 0, x >= 0``.

    An irreducible solution lies strictly inside the zonotope of at most
    ``n - r`` primitive extreme rays, and Cramer's rule bounds every ray
    entry by the largest ``k x k`` minor with ``k <= r``.
    """
    rows = [list(r) for r in rows if any(r)]
    r = rank(rows) if rows else 0
    biggest = 1
    for k in range(1, r + 1):
        for rs in itertools.combinations(range(len(rows)), k):
            for cs in itertools.combinations(range(n), k):
                biggest = max(biggest, abs(det([[rows[i][j] for j in cs] for i in rs])))
    return max(1, (n - r) * biggest)


def minimal_solutions(rows, n, box: int) -> set[tuple[int, ...]]:
    """Minimal nonzero solutions with every coordinate at most ``box``.

    Points of the box are visited in layers of equal coordinate sum; a
    solution is minimal exactly when no earlier minimal solution lies below
    it, and each one found blocks its upper orthant.
    """
    axes = [np.arange(box + 1, dtype=np.int32)] * n
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    ok = np.ones(len(grid), dtype=bool)
    for row in rows:
        ok &= grid @ np.array(row, dtype=np.int32) == 0
    ok[0] = False
    idx = np.nonzero(ok)[0]
    sums = grid[idx].sum(axis=1)
    order = np.argsort(sums, kind="stable")
    idx, sums = idx[order], sums[order]
    blocked = np.zeros((box + 1,) * n, dtype=bool)
    out = set()
    start = 0
    while start < len(idx):
        stop = np.searchsorted(sums, sums[start], side="right")
        layer = grid[idx[start:stop]]
        fresh = layer[~blocked[tuple(layer.T)]]
        for y in fresh:
            out.add(tuple(int(c) for c in y))
            blocked[tuple(slice(int(c), None) for c in y)] = True
        start = stop
    return out


# -- disc enumeration for markings without marked edges ----------------------

_FACES = {f: tuple(v for v in range(4) if v != f) for f in range(4)}


def _loc_name(loc) -> str:
    return f"v{loc[1]}" if loc[0] == "v" else f"e{loc[1][0]}{loc[1][1]}"


def _on_face(loc, f) -> bool:
    return f not in ((loc[1],) if loc[0] == "v" else loc[1])


def _order(f, loc) -> float:
    """Position of a boundary location around the triangle of face ``f``."""
    a, b, c = _FACES[f]
    ring = [("v", a), ("e", (a, b)), ("v", b), ("e", (b, c)), ("v", c), ("e", (a, c))]
    return ring.index(loc)


def _cross(f, x, y) -> bool:
    i, j = sorted((_order(f, x[0]), _order(f, x[1])))
    k, l = _order(f, y[0]), _order(f, y[1])
    if len({i, j, k, l}) < 4:
        return True
    return (i < k < j) != (i < l < j)


def vertex_marking_discs(marked: set[int], max_len: int = 8) -> set[str]:
    """Canonical encodings of discs for a tetrahedron with only marked vertices.

    Walks every simple cycle of boundary locations joined by arcs in faces
    and keeps those meeting the edge, face and embedding conditions.
    """
    edges = list(itertools.combinations(range(4), 2))
    locs = [("v", v) for v in sorted(marked)] + [("e", e) for e in edges]

    def arcs_from(loc):
        for f in range(4):
            if not _on_face(loc, f):
                continue
            for other in locs:
                if other == loc or not _on_face(other, f):
                    continue
                kinds = (loc[0], other[0])
                if kinds == ("e", "e"):
                    yield f, other
                elif kinds == ("v", "v"):
                    yield f, other
                else:
                    v, e = (loc[1], other[1]) if loc[0] == "v" else (other[1], loc[1])
                    if v not in e:
                        yield f, other

    found = set()

    def close(path, faces):
        arcs = list(zip(faces, path, path[1:] + path[:1]))
        # consecutive arcs leave each location through different faces
        for k in range(len(arcs)):
            if arcs[k][0] == arcs[k - 1][0]:
                return
        by_face = {}
        for f, p, q in arcs:
            by_face.setdefault(f, []).append((p, q))
        for f, placed in by_face.items():
            ends = [x for arc in placed for x in arc]
            if len(ends) != len(set(ends)):
                return
            for x, y in itertools.combinations(placed, 2):
                if _cross(f, x, y):
                    return
        touched = {p[1] for p in path if p[0] == "v"}
        for p in path:
            if p[0] == "e" and touched & set(p[1]):
                return
        tokens = []
        for f, p, q in arcs:
            a, b = sorted((_loc_name(p), _loc_name(q)))
            tokens.append(f"f{f}:{a}-{b}")
        n = len(tokens)
        best = min(tuple(s[i:] + s[:i]) for s in (tokens, tokens[::-1]) for i in range(n))
        found.add(",".join(best))

    def walk(path, faces):
        if len(path) > max_len:
            return
        for f, nxt in arcs_from(path[-1]):
            if nxt == path[0] and len(path) >= 2:
                close(path, faces + [f])
            elif nxt not in path:
                walk(path + [nxt], faces + [f])

    for start in locs:
        walk([start], [])
    return found
