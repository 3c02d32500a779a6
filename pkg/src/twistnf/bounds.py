"""Exact evaluation of the unknotting bounds and their inequality chains.

Every quantity is a Python integer.  Comparisons between powers of two that
are too large to expand are decided on exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DISC_TYPES_PER_TET = 59
MAX_COEFF_SUM = 12
DEFAULT_BIT_CAP = 10**6


class BoundError(ArithmeticError):
    """An inequality that the bound relies on failed to verify."""


def _check(ok: bool, what: str):
    if not ok:
        raise BoundError(what)


def _ceil_half(k: int) -> int:
    return -(-k // 2)


def disc_count_bound(t: int) -> tuple[int, int, int]:
    """``(raw, relaxed, final)`` disc-count bounds for ``t`` tetrahedra.

    raw is ``59t * 12**((59t-1)/2)`` with the exponent rounded up when it is a
    half-integer; relaxed is ``59t * 2**(118t-2)``; final is ``2**(120t+10)``.
    The chain ``raw <= relaxed`` and ``59t * relaxed <= final`` is checked.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    n = DISC_TYPES_PER_TET * t
    raw = n * MAX_COEFF_SUM ** _ceil_half(n - 1)
    relaxed = n * 2 ** (118 * t - 2)
    final = 2 ** (120 * t + 10)
    _check(raw <= relaxed, f"59t*12^ceil((59t-1)/2) <= 59t*2^(118t-2) at t={t}")
    _check(n * relaxed <= final, f"(59t)^2*2^(118t-2) <= 2^(120t+10) at t={t}")
    return raw, relaxed, final


def elementary_move_bound(t: int) -> int:
    """``2**(120t+14)``, after checking ``2*6*2**(120t+10) <= 2**(120t+14)``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    bound = 2 ** (120 * t + 14)
    _check(2 * 6 * 2 ** (120 * t + 10) <= bound, f"12*2^(120t+10) <= 2^(120t+14) at t={t}")
    return bound


def projection_bound(n_edges: int, k_moves: int) -> int:
    """Ceiling of ``2k (n + k/2 + 1)**2``."""
    if n_edges < 0 or k_moves < 0:
        raise ValueError("arguments must be non-negative")
    value = 2 * k_moves * (n_edges + Fraction(k_moves, 2) + 1) ** 2
    return math.ceil(value)


def diagram_triangulation_bound(n: int) -> int:
    """Tetrahedra in the polyhedron built from an ``n``-crossing diagram."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 140 * (n + 1)


@dataclass(frozen=True)
class ReidemeisterBound:
    n: int
    t: int
    q_bits: int
    chain: tuple[int, int, int] | None
    final_exponent: int
    status: str

    @property
    def final(self) -> int:
        return 2**self.final_exponent


def reidemeister_bound(n: int, *, bit_cap: int = DEFAULT_BIT_CAP) -> ReidemeisterBound:
    """Reidemeister-move bound for an ``n``-crossing diagram of the unknot.

    With ``t = 140(n+1)`` and ``M = 2**(120t+14)`` the chain is
    ``Q = M (2t + M/2 + 1)**2 < 2**(360t+43) <= 2**(100000 n)``.  ``Q`` is
    expanded when its size fits ``bit_cap``; otherwise the first link is shown
    from ``2t + M/2 + 1 < 2**(120t+14)``.  For ``n = 1`` the last link fails
    and the status is ``"paper exception"``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    t = diagram_triangulation_bound(n)
    e_m = 120 * t + 14
    e_mid = 360 * t + 43
    e_final = 10**5 * n
    if 3 * e_m <= bit_cap:
        m = 2**e_m
        q = m * (2 * t + m // 2 + 1) ** 2
        mid = 2**e_mid
        _check(q < mid, f"Q < 2^(360t+43) at n={n}")
        chain = (q, mid, 2**e_final) if e_final <= bit_cap else None
        q_bits = q.bit_length()
    else:
        # 2t + 2^(e_m-1) + 1 < 2^e_m, hence Q < 2^(3 e_m) = 2^(360t+42)
        _check((2 * t + 1).bit_length() <= e_m - 1, f"2t+1 < 2^(120t+13) at n={n}")
        _check(3 * e_m < e_mid, f"3(120t+14) < 360t+43 at n={n}")
        chain = None
        q_bits = 3 * e_m
    if e_mid <= e_final:
        status = "verified"
    elif n == 1:
        status = "paper exception"
    else:
        raise BoundError(f"2^(360t+43) <= 2^(100000n) fails at n={n}")
    return ReidemeisterBound(n, t, q_bits, chain, e_final, status)


def format_power(value: int) -> str:
    """``2^e`` for powers of two, decimal otherwise."""
    if value > 0 and value & (value - 1) == 0:
        return f"2^{value.bit_length() - 1}"
    return str(value)
