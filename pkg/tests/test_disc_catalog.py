import itertools
import re

import pytest

from oracles import vertex_marking_discs
from twistnf.disc_catalog import (
    MAX_SIDES,
    FaceCurveClass,
    canonical_tokens,
    classify_face_arc,
    enumerate_twisted_discs,
    fan_triangulation,
    is_new,
    max_common_arc_count,
    new_discs,
    sides,
    subcount,
    truncate_disc_types,
    truncation,
)
from twistnf.moves import DiscComplex
from twistnf.triangulation import TetrahedronMarking, TetrahedronType

T = TetrahedronType


# -- an independent relabelling of encodings ---------------------------------

_ARC = re.compile(r"f(\d):(v\d|e\d\d)-(v\d|e\d\d)")
_RUN = re.compile(r"m(\d)(\d):(full|int|ext\d):(\d)(\d)")


def _relabel_loc(loc, p):
    if loc[0] == "v":
        return f"v{p[int(loc[1])]}"
    a, b = sorted((p[int(loc[1])], p[int(loc[2])]))
    return f"e{a}{b}"


def _relabel_token(tok, p):
    m = _ARC.fullmatch(tok)
    if m:
        a, b = sorted((_relabel_loc(m[2], p), _relabel_loc(m[3], p)))
        return f"f{p[int(m[1])]}:{a}-{b}"
    m = _RUN.fullmatch(tok)
    a, b = p[int(m[1])], p[int(m[2])]
    fa, fb = p[int(m[4])], p[int(m[5])]
    kind = m[3] if not m[3].startswith("ext") else f"ext{p[int(m[3][3:])]}"
    if a > b:
        a, b, fa, fb = b, a, fb, fa
    return f"m{a}{b}:{kind}:{fa}{fb}"


def _relabel(encoding, p):
    return ",".join(canonical_tokens([_relabel_token(t, p) for t in encoding.split(",")]))


def _symmetries(m: TetrahedronMarking):
    for p in itertools.permutations(range(4)):
        if m.relabel(p) == m:
            yield p


# -- counts -------------------------------------------------------------------


@pytest.mark.parametrize("vertices", [(), (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3)])
def test_vertex_markings_match_the_brute_force_walk(vertices):
    m = TetrahedronMarking.of(vertices, [])
    assert {d.encoding for d in enumerate_twisted_discs(m)} == vertex_marking_discs(set(vertices))


def test_unmarked_gives_four_triangles_and_three_quads():
    discs = enumerate_twisted_discs(T.UNMARKED)
    assert len(discs) == 7
    assert sorted(sides(d) for d in discs) == [3, 3, 3, 3, 4, 4, 4]


def test_vertex_rows_count_the_classical_families():
    # per row: corner triangles, quads, vertex-touching, one vv, all vv, bigons, vv quads
    expected = {
        T.TWO_VERTICES: [4, 3, 6, 2, 0, 1, 0],
        T.THREE_VERTICES: [4, 3, 9, 6, 4, 3, 0],
        T.FOUR_VERTICES: [4, 3, 12, 12, 16, 6, 6],
    }
    families = ["corner-triangle", "quad", "vertex-touching-triangle", "triangle-one-vv", "triangle-all-vv", "bigon", "quad-all-vv"]
    for t, counts in expected.items():
        assert [subcount(t, f) for f in families] == counts


def test_one_edge_decomposes_as_unused_touching_and_runs():
    assert len(enumerate_twisted_discs(T.ONE_EDGE)) == 30
    assert subcount(T.ONE_EDGE, "vertex-touching-triangle") == 6
    assert subcount(T.ONE_EDGE, "edge-run") == 21
    assert subcount(T.ONE_EDGE, "corner-triangle") + subcount(T.ONE_EDGE, "quad") == 3


def test_edge_rows_are_built_from_smaller_rows():
    one = len(enumerate_twisted_discs(T.ONE_EDGE))
    new_1v = len(new_discs(T.ONE_EDGE_ONE_VERTEX))
    assert len(enumerate_twisted_discs(T.ONE_EDGE_ONE_VERTEX)) == one + new_1v
    assert len(enumerate_twisted_discs(T.ONE_EDGE_TWO_VERTICES)) == one + 2 * new_1v + len(new_discs(T.ONE_EDGE_TWO_VERTICES))


def test_catalogs_are_closed_under_symmetries():
    for t in T:
        m = t.standard_marking
        codes = {d.encoding for d in enumerate_twisted_discs(m)}
        for p in _symmetries(m):
            assert {_relabel(c, p) for c in codes} == codes, (t, p)


def test_relabelled_markings_give_equal_counts():
    for t in (T.ONE_EDGE_ONE_VERTEX, T.TWO_EDGES):
        m = t.standard_marking
        for p in [(1, 0, 2, 3), (2, 3, 0, 1), (3, 1, 2, 0)]:
            moved = m.relabel(p)
            codes = {_relabel(d.encoding, p) for d in enumerate_twisted_discs(m)}
            assert codes == {d.encoding for d in enumerate_twisted_discs(moved)}


def test_catalog_is_sorted_and_canonical():
    for t in T:
        discs = enumerate_twisted_discs(t)
        codes = [d.encoding for d in discs]
        assert codes == sorted(codes) and len(set(codes)) == len(codes)
        for c in codes:
            assert ",".join(canonical_tokens(c.split(","))) == c


def test_sides_stay_within_six():
    worst = max(sides(d) for t in T for d in enumerate_twisted_discs(t))
    assert worst == MAX_SIDES == 6


def test_fan_triangulation():
    assert fan_triangulation(2) == [(0, 1, 2)]
    assert len(fan_triangulation(4)) == 2
    for t in T:
        for d in enumerate_twisted_discs(t):
            tris = fan_triangulation(d)
            assert len(tris) == max(1, sides(d) - 2) <= 6
            DiscComplex(tuple(tris))


def test_new_types_use_the_distinguishing_features():
    for d in new_discs(T.ONE_EDGE_TWO_VERTICES):
        assert {2, 3} <= d.touched_vertices
    for d in new_discs(T.TWO_EDGES):
        assert {r.edge for r in d.runs} == {(0, 1), (2, 3)}
    assert all(is_new(d) for d in enumerate_twisted_discs(T.UNMARKED))


def test_unknown_family_is_an_error():
    with pytest.raises(KeyError):
        subcount(T.UNMARKED, "pentagram")


# -- truncation ---------------------------------------------------------------


def test_truncation_is_a_surjection():
    for t in T:
        normal, image = truncate_disc_types(t)
        assert len(image) == len(enumerate_twisted_discs(t))
        assert set(image) == set(range(len(normal)))


def test_truncation_is_a_bijection_without_edges():
    for t in (T.UNMARKED, T.ONE_VERTEX, T.FOUR_VERTICES):
        normal, image = truncate_disc_types(t)
        assert sorted(image) == list(range(len(normal)))


def test_preimages_of_a_normal_type_agree_after_truncation():
    tr = truncation(T.ONE_EDGE)
    for k, n in enumerate(tr.normal):
        pre = tr.preimages(k)
        assert pre
        assert all(tr.image[tr.twisted.index(d)] == k for d in pre)


def test_max_common_arc_count_on_vertex_rows():
    assert [max_common_arc_count(t) for t in (T.UNMARKED, T.ONE_VERTEX, T.FOUR_VERTICES)] == [2, 3, 3]
    assert max_common_arc_count(T.FOUR_VERTICES, arcs="all") == 8


def test_vertex_vertex_arcs_average_eight_users_with_four_vertices():
    # 96 incidences of vertex-vertex arcs spread over 12 arc types
    discs = enumerate_twisted_discs(T.FOUR_VERTICES)
    uses = sum(1 for d in discs for a in d.arcs if a.kind == "vertex-vertex")
    assert uses == 96


# -- arcs in a face -----------------------------------------------------------


def test_face_arc_classes():
    assert classify_face_arc(3, ("e", (0, 1)), ("e", (0, 2))) is FaceCurveClass.NORMAL
    assert classify_face_arc(3, ("v", 0), ("v", 0), [0]) is FaceCurveClass.MONOGON
    assert classify_face_arc(3, ("e", (0, 1)), ("e", (1, 0))) is FaceCurveClass.DCURVE
    assert classify_face_arc(3, ("v", 0), ("e", (1, 2)), [0]) is FaceCurveClass.NORMAL
    assert classify_face_arc(3, ("v", 0), ("e", (0, 2)), [0]) is FaceCurveClass.DCURVE
    with pytest.raises(ValueError):
        classify_face_arc(3, ("v", 3), ("e", (0, 1)))
