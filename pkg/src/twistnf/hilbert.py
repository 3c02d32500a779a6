"""Minimal Hilbert bases of ``{x >= 0 integral : A x = 0}``.

The basis is computed by the completion procedure of Contejean and Devie:
grow candidate vectors one unit at a time, only in directions that move the
residual ``A x`` back towards the origin, and drop any candidate that already
dominates a solution found so far.  The frontier lives in numpy int64
arrays; a guard stops the search well before overflow is possible.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

DEFAULT_CAP = 10**6


class HilbertCapExceeded(RuntimeError):
    """The instance needs more candidate vectors than the configured cap."""


def _as_rows(equations) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in row) for row in getattr(equations, "equations", equations)]


def _components(rows, n) -> list[list[int]]:
    """Groups of variables linked by shared equations."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        support = [j for j, c in enumerate(row) if c]
        for j in support[1:]:
            a, b = find(support[0]), find(j)
            if a != b:
                parent[b] = a
    groups = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


def _dominates(x, y) -> bool:
    return all(a >= b for a, b in zip(x, y))


# Coordinates and residuals stay far below this in every desk-scale instance;
# past it the int64 fast path could overflow, so the search stops loudly.
_INT64_GUARD = 2**40


def _dominating_rows(cand: np.ndarray, found: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Mask of candidate rows that dominate some row of ``found``."""
    if not len(found):
        return np.zeros(len(cand), dtype=bool)
    out = np.empty(len(cand), dtype=bool)
    step = max(1, chunk * 64 // max(1, len(found)))
    for i in range(0, len(cand), step):
        block = cand[i : i + step]
        out[i : i + step] = (block[:, None, :] >= found[None, :, :]).all(-1).any(-1)
    return out


def _basis_block(rows, n, cap) -> list[tuple[int, ...]]:
    a = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    x = np.eye(n, dtype=np.int64)
    r = a.T.copy()  # residual A x for each frontier row
    found = np.zeros((0, n), dtype=np.int64)
    generated = n
    while len(x):
        done = ~r.any(axis=1)
        found = np.vstack([found, x[done]])
        x, r = x[~done], r[~done]
        if not len(x):
            break
        # <A x, A e_j> < 0 marks the directions that shrink the residual
        rows_i, cols_j = np.nonzero(r @ a < 0)
        y = x[rows_i].copy()
        y[np.arange(len(y)), cols_j] += 1
        y, first = np.unique(y, axis=0, return_index=True)
        ry = r[rows_i[first]] + a.T[cols_j[first]]
        keep = ~_dominating_rows(y, found)
        x, r = y[keep], ry[keep]
        generated += len(x)
        if generated > cap:
            raise HilbertCapExceeded(f"more than {cap} candidate vectors")
        if len(x) and (x.max() > _INT64_GUARD or np.abs(r).max() > _INT64_GUARD):
            raise HilbertCapExceeded("coordinates outgrew the int64 search range")
    return [tuple(int(c) for c in row) for row in found]


def hilbert_basis(equations, n: int | None = None, *, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """The minimal Hilbert basis, in descending lexicographic order.

    ``equations`` is a sequence of coefficient rows or any object with an
    ``equations`` attribute (such as a matching system).
    """
    rows = _as_rows(equations)
    if n is None:
        n = getattr(equations, "n", None) or (len(rows[0]) if rows else None)
    if not n:
        raise ValueError("variable count is unknown")
    out = []
    for group in _components(rows, n):
        sub = [tuple(row[j] for j in group) for row in rows if any(row[j] for j in group)]
        for y in _basis_block(sub, len(group), cap):
            x = [0] * n
            for j, c in zip(group, y):
                x[j] = c
            out.append(tuple(x))
    out.sort(reverse=True)
    return out


def is_solution(v: Sequence[int], equations) -> bool:
    rows = _as_rows(equations)
    return all(x >= 0 for x in v) and all(sum(c * x for c, x in zip(row, v)) == 0 for row in rows)


def is_fundamental(v: Sequence[int], equations) -> bool:
    """True iff the solution ``v`` is not a sum of two nonzero solutions.

    Searches every vector dominated by ``v`` on its support, pruning a partial
    assignment once some equation can no longer reach zero.
    """
    rows = _as_rows(equations)
    if not is_solution(v, rows):
        raise ValueError("not a solution")
    support = [j for j, x in enumerate(v) if x]
    if not support:
        return False
    sub = [[row[j] for j in support] for row in rows]
    caps = [v[j] for j in support]
    k = len(support)
    # reach[i][r] = (lowest, highest) value the tail from position i can add to row r
    reach = [[(0, 0)] * len(sub) for _ in range(k + 1)]
    for i in range(k - 1, -1, -1):
        reach[i] = [
            (lo + min(0, row[i] * caps[i]), hi + max(0, row[i] * caps[i]))
            for (lo, hi), row in zip(reach[i + 1], sub)
        ]

    u = [0] * k

    def search(i, partial):
        for (lo, hi), s in zip(reach[i], partial):
            if not lo <= -s <= hi:
                return False
        if i == k:
            total = sum(u)
            return 0 < total < sum(caps)
        for c in range(caps[i] + 1):
            u[i] = c
            if search(i + 1, [p + row[i] * c for p, row in zip(partial, sub)]):
                return True
        u[i] = 0
        return False

    return not search(0, [0] * len(sub))


def fundamental_coordinate_bound(n: int, m: int) -> int:
    """``n * m**((n-1)/2)``, with the exponent rounded up when ``n`` is even."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    exponent = (n - 1) // 2 if n % 2 else n // 2
    return n * m**exponent


def max_abs_row_sum(equations) -> int:
    return max((sum(abs(c) for c in row) for row in _as_rows(equations)), default=0)
