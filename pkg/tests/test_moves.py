import random
import time

import pytest

from twistnf.disc_catalog import enumerate_twisted_discs, fan_triangulation
from twistnf.moves import (
    DiscComplex,
    ElementaryMove,
    MoveCertificate,
    MoveKind,
    NotADisc,
    collapse_certificate,
    random_disc,
    read_certificate,
    read_disc,
    shelling_order,
    validate_certificate,
    write_certificate,
    write_disc,
)
from twistnf.triangulation import TetrahedronType


def _shells(d, order):
    """Every suffix of ``order`` is a disc."""
    assert sorted(map(sorted, order)) == sorted(map(sorted, d.triangles))
    for i in range(len(order)):
        DiscComplex(tuple(order[i:]))


def test_single_triangle():
    d = DiscComplex(((0, 1, 2),))
    assert shelling_order(d) == [(0, 1, 2)]
    c = collapse_certificate(d)
    assert c.moves == () and len(c.final) == 3
    assert validate_certificate(c, d)


def test_two_triangles():
    d = DiscComplex(((0, 1, 2), (0, 2, 3)))
    _shells(d, shelling_order(d))
    c = collapse_certificate(d)
    assert len(c.moves) <= 4 and len(c.final) == 3
    assert validate_certificate(c, d)


def test_fan_of_ten():
    d = DiscComplex(tuple((0, i, i + 1) for i in range(1, 11)))
    order = shelling_order(d)
    assert len(order) == 10
    _shells(d, order)
    assert validate_certificate(collapse_certificate(d), d)


@pytest.mark.parametrize(
    "tris, reason",
    [
        (((0, 1, 1),), "degenerate"),
        (((0, 1, 2), (0, 1, 2)), "repeated"),
        (((0, 1, 2), (3, 4, 5)), "connected"),
        (((0, 1, 2), (0, 1, 3), (0, 1, 4)), "edge"),
        (((0, 1, 2), (0, 3, 4)), "vertex"),
        (((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)), "boundary"),
    ],
)
def test_non_discs_are_named(tris, reason):
    with pytest.raises(NotADisc, match=reason):
        DiscComplex(tris)


def test_annulus_is_rejected():
    ring = tuple((i, (i + 1) % 3, 3 + i) for i in range(3)) + tuple(((i + 1) % 3, 3 + (i + 1) % 3, 3 + i) for i in range(3))
    with pytest.raises(NotADisc):
        DiscComplex(ring)


def test_random_discs_collapse_within_budget():
    rng = random.Random(17)
    for _ in range(200):
        d = random_disc(rng.randint(1, 60), rng)
        c = collapse_certificate(d)
        v = validate_certificate(c, d)
        assert v, v.reason
        assert v.moves <= 2 * d.w == v.budget
        assert c.counts()[MoveKind.INSERT_VERTEX] == c.counts()[MoveKind.REMOVE_VERTEX]


def test_large_disc_is_fast():
    d = random_disc(200, random.Random(1))
    start = time.perf_counter()
    c = collapse_certificate(d)
    elapsed = time.perf_counter() - start
    assert validate_certificate(c, d)
    assert len(c.moves) <= 400
    assert elapsed < 1.0


def test_fan_triangulations_of_catalogued_discs():
    for t in TetrahedronType:
        for disc in enumerate_twisted_discs(t)[:40]:
            d = DiscComplex(tuple(fan_triangulation(disc)))
            assert validate_certificate(collapse_certificate(d), d)


def test_unknown_triangle_is_illegal():
    d = DiscComplex(((0, 1, 2), (0, 2, 3)))
    good = collapse_certificate(d)
    bogus = MoveCertificate(good.initial, (ElementaryMove(MoveKind.TRIANGLE_SLIDE, (0, 9, 1)),), good.final)
    v = validate_certificate(bogus, d)
    assert not v and v.reason


def test_budget_exceeded():
    d = DiscComplex(((0, 1, 2), (0, 2, 3)))
    good = collapse_certificate(d)
    padding = [ElementaryMove(MoveKind.INSERT_VERTEX, (0, 1, 100)), ElementaryMove(MoveKind.REMOVE_VERTEX, (100,))] * 3
    long = MoveCertificate(good.initial, tuple(padding[: 2 * d.w + 1 - len(good.moves)]) + good.moves, good.final)
    assert len(long.moves) == 2 * d.w + 1
    v = validate_certificate(long, d)
    assert not v and v.reason == "budget exceeded"


def test_wrong_initial_cycle():
    d = DiscComplex(((0, 1, 2), (0, 2, 3)))
    good = collapse_certificate(d)
    v = validate_certificate(MoveCertificate((0, 1, 2), good.moves, good.final), d)
    assert not v


def test_file_round_trips():
    d = random_disc(25, random.Random(2))
    back = read_disc(write_disc(d))
    assert back.triangles == d.triangles
    c = collapse_certificate(d)
    assert read_certificate(write_certificate(c)) == c


@pytest.mark.parametrize(
    "text, message",
    [
        ("tri 0 1 2\n", "missing"),
        ("triangles 2\ntri 0 1 2\n", "declared 2"),
        ("triangles 1\ntri 0 1\n", "line 2"),
        ("triangles 1\nquad 0 1 2 3\n", "unknown statement"),
    ],
)
def test_disc_file_errors(text, message):
    with pytest.raises(ValueError, match=message):
        read_disc(text)


def test_certificate_file_errors():
    with pytest.raises(ValueError, match="initial"):
        read_certificate("move slide 0 1 2\n")
    with pytest.raises(ValueError, match="line 2"):
        read_certificate("initial 0 1 2\nmove twist 0 1 2\nfinal 0 1 2\n")
    with pytest.raises(ValueError, match="argument count"):
        read_certificate("initial 0 1 2\nmove remove 0 1\nfinal 0 1 2\n")
