import functools
import random

import pytest

from oracles import coordinate_box, minimal_solutions
from randgen import random_system
from twistnf.hilbert import (
    HilbertCapExceeded,
    fundamental_coordinate_bound,
    hilbert_basis,
    is_fundamental,
    is_solution,
    max_abs_row_sum,
)


@pytest.mark.parametrize(
    "rows, n, expected",
    [
        ([(1, -1)], 2, [(1, 1)]),
        ([(1, 1, -2)], 3, [(2, 0, 1), (1, 1, 1), (0, 2, 1)]),
        ([], 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        ([(1, 1)], 2, []),
    ],
)
def test_small_bases(rows, n, expected):
    assert hilbert_basis(rows, n) == expected


def test_is_fundamental_on_small_systems():
    assert is_fundamental((1, 1), [(1, -1)])
    assert not is_fundamental((2, 2), [(1, -1)])
    assert is_fundamental((1, 1, 1), [(1, 1, -2)])
    assert not is_fundamental((2, 2, 2), [(1, 1, -2)])
    assert not is_fundamental((0, 0), [(1, -1)])
    with pytest.raises(ValueError):
        is_fundamental((1, 0), [(1, -1)])


def test_fundamental_coordinate_bound():
    assert fundamental_coordinate_bound(1, 7) == 1
    assert fundamental_coordinate_bound(3, 2) == 6
    assert fundamental_coordinate_bound(4, 2) == 16
    assert fundamental_coordinate_bound(59, 12) == 59 * 12**29
    with pytest.raises(ValueError):
        fundamental_coordinate_bound(0, 3)


def test_accepts_system_objects(square):
    _, system, basis = square
    assert tuple(hilbert_basis(system)) == basis


def test_cap_is_an_error_not_a_truncation():
    with pytest.raises(HilbertCapExceeded):
        hilbert_basis([(1, 1, 1, -7)], 4, cap=10)


def _random_instances(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 6)
        m = 1 if n >= 5 else rng.randint(1, 2)
        yield random_system(rng, n, m), n


@pytest.mark.parametrize("seed", range(4))
def test_matches_brute_force(seed):
    for rows, n in _random_instances(seed, 50):
        basis = hilbert_basis(rows, n)
        bound = fundamental_coordinate_bound(n, max(1, max_abs_row_sum(rows)))
        assert all(max(v) <= bound for v in basis)
        assert set(basis) == minimal_solutions(rows, n, coordinate_box(rows, n)), rows


@functools.lru_cache(maxsize=None)
def _combination(target, basis):
    """Whether ``target`` is a non-negative integer combination of ``basis``."""
    if not any(target):
        return True
    for b in basis:
        rest = tuple(t - c for t, c in zip(target, b))
        if min(rest) >= 0 and _combination(rest, basis):
            return True
    return False


def test_basis_elements_are_minimal_and_complete():
    rng = random.Random(11)
    for rows, n in _random_instances(21, 40):
        basis = hilbert_basis(rows, n)
        for v in basis:
            assert is_fundamental(v, rows)
            assert not any(u != v and all(a <= b for a, b in zip(u, v)) for u in basis)
        for _ in range(5):
            x = tuple(rng.randint(0, 4) for _ in range(n))
            if any(x) and is_solution(x, rows):
                assert _combination(x, tuple(basis))


def test_square_fixture_basis(square):
    _, system, basis = square
    assert basis and all(system.is_solution(v) for v in basis)
    bound = fundamental_coordinate_bound(system.n, system.max_abs_sum())
    assert max(max(v) for v in basis) <= bound
