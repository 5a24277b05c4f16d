import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import simple_points
from dp3castles.castle import build_castle
from dp3castles.contour import DIRECTIONS, SIDE_NAMES, SelfIntersecting, dragon, tuple_for_point
from dp3castles.matchings import minimal_matching_bruteforce, minimal_matching_descent, twistable_faces
from dp3castles import minmatch
from dp3castles.minmatch import (
    COVERINGS,
    ZERO_LINE_REGIONS,
    arithmetic_heights,
    border_faces,
    check_covering_table,
    construct,
    construct_minimal,
    edge_class,
    edges_along,
    floor_identity_holds,
    regions_of,
    sector_division,
    staircase_heights,
    zero_axis,
    zero_line,
)

# transcribed row by row: side -> (positive, negative)
TABLE = {
    "a": ("1-4,2-5,3-6", "1-5,2-4,3-6"),
    "b": ("1-4,2-6,3-5", "1-4,2-5,3-6"),
    "c": ("1-3,2-6,4-5", "1-4,2-6,3-5"),
    "d": ("1-6,2-3,4-5", "1-3,2-6,4-5"),
    "e": ("1-5,2-3,4-6", "1-6,2-3,4-5"),
    "f": ("1-5,2-4,3-6", "1-5,2-3,4-6"),
}


def _pairs(text):
    return tuple(tuple(int(x) for x in pair.split("-")) for pair in text.split(","))


def test_covering_table_transcription():
    for side, (pos, neg) in TABLE.items():
        assert COVERINGS[(side, 1)] == _pairs(pos)
        assert COVERINGS[(side, -1)] == _pairs(neg)


def test_covering_redundancy_self_check(monkeypatch):
    check_covering_table()
    broken = dict(COVERINGS)
    broken[("b", -1)] = _pairs("1-5,2-4,3-6")
    monkeypatch.setattr(minmatch, "COVERINGS", broken)
    with pytest.raises(AssertionError):
        check_covering_table()


def test_edge_classes_are_label_pairs():
    c = build_castle(1, 1, 1)
    for e in c.edges:
        a, b = edge_class(e)
        assert 1 <= a < b <= 6


def test_worked_example_borders():
    sm = sector_division(tuple_for_point(4, 3, 2))
    assert sorted(st.corner for st in sm.staircases) == [1, 4]  # b->c and e->f
    assert sorted(SIDE_NAMES[st.positive_side] for st in sm.staircases) == ["c", "f"]
    assert sorted(ln.corner for ln in sm.lines) == [2, 5]  # c->d and f->a
    for ln in sm.lines:
        d = DIRECTIONS[SIDE_NAMES[ln.second_side]]
        assert ln.direction in (d, (-d[0], -d[1]))


def test_worked_example_zero_line():
    c = tuple_for_point(4, 3, 2)
    sm = sector_division(c)
    assert SIDE_NAMES[sm.axis] == "c" and sm.zero_parallel
    assert zero_line(c) == sm.zero_line


def test_zero_axis_rotates_with_pattern():
    assert zero_axis((1, -1, 1, 1, -1, 1)) == 2
    assert zero_axis((-1, 1, 1, -1, 1, 1)) == 1
    with pytest.raises(ValueError):
        zero_axis((1, -1, 1, -1, 1, -1))


def test_four_sectors_everywhere():
    for p in simple_points(3):
        sm = construct(build_castle(*p)).sectors
        assert len(sm.groups) == 4
        assert sorted(q for g in sm.groups for q in g) == list(range(6))
        assert set(sm.triangle_sector.values()) <= set(range(4))


def test_self_intersecting_contour_rejected():
    with pytest.raises(SelfIntersecting):
        sector_division(tuple_for_point(0, 0, -1))


def test_identity_instances():
    assert floor_identity_holds("1", 5, 2)
    assert 7 // 2 + 4 // 2 == 5
    assert arithmetic_heights("1'", -4, 2) == {2: 1, 5: 3}
    assert floor_identity_holds("1'", -4, 2)


@given(st.sampled_from(sorted(ZERO_LINE_REGIONS)), st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 20))
def test_floor_identities(region, i, j, k):
    if region in regions_of(i, j, k):
        assert floor_identity_holds(region, i, k)


def test_worked_example_heights():
    sm = sector_division(tuple_for_point(4, 3, 2))
    assert staircase_heights(sm) == arithmetic_heights("1", 4, 2) == {2: 3, 5: 1}


@pytest.mark.parametrize("p", [(4, 3, 2), (0, 4, 3), (-2, 3, 1), (2, 2, 4), (-3, 2, 2)])
def test_geometry_matches_arithmetic_on_interior_points(p):
    (region,) = regions_of(*p)
    sm = construct(build_castle(*p)).sectors
    assert staircase_heights(sm) == arithmetic_heights(region, p[0], p[2])


def test_worked_example_is_minimal():
    c = build_castle(4, 3, 2)
    m = construct_minimal(c)
    assert m.is_perfect()
    assert not twistable_faces(m)[0]
    assert m.edges == minimal_matching_descent(c).edges


@pytest.mark.parametrize("p", simple_points(1))
def test_equals_exhaustive_minimum(p):
    c = build_castle(*p)
    assert construct_minimal(c).edges == minimal_matching_bruteforce(c).edges


@pytest.mark.parametrize("p", [(1, 4, 2), (1, 3, 4), (2, 2, 3), (5, 3, 2), (0, 4, 4), (2, 3, 5), (3, 1, 3), (2, 1, -2)])
def test_boundary_fixtures(p):
    c = build_castle(*p)
    assert construct_minimal(c).edges == minimal_matching_descent(c).edges


# the staircase stops early at a straight line, short of its formula height
SHORT_STAIRCASE = [(-5, 3, 3), (-6, 4, 3), (-6, 4, 4), (-7, 4, 4), (-7, 5, 3), (-7, 5, 4), (-7, 5, 5)]


@pytest.mark.parametrize("p", SHORT_STAIRCASE)
def test_short_staircase_points_still_minimal(p):
    (region,) = regions_of(*p)
    c = build_castle(*p)
    res = construct(c)
    assert region == "2'"
    assert staircase_heights(res.sectors) != arithmetic_heights(region, p[0], p[2])
    assert res.matching.edges == minimal_matching_descent(c).edges


def _rotated(edges):
    return {frozenset((-x, -y) for x, y in e) for e in edges}


def _normalised(edges):
    pts = [v for e in edges for v in e]
    ox, oy = min(pts)
    return {frozenset((x - ox, y - oy) for x, y in e) for e in edges}


@pytest.mark.parametrize("pair", [("D", "D'"), ("D_half", "D'_half")])
def test_dragon_half_turn(pair):
    a = construct_minimal(build_castle(*dragon(pair[0], 2)))
    b = construct_minimal(build_castle(*dragon(pair[1], 2)))
    assert _normalised(_rotated(a.edges)) == _normalised(b.edges)


@pytest.mark.parametrize("p", simple_points(2))
def test_lemma_suite(p):
    c = build_castle(*p)
    res = construct(c)
    m, sm = res.matching, res.sectors
    pos, neg = twistable_faces(m)
    pos_keys = {f.key for f in pos}
    twistable = pos_keys | {f.key for f in neg}
    faces = border_faces(c, sm)
    assert m.is_perfect()
    assert not faces["interior"] & twistable
    assert not edges_along(c, sm, "straight") & m.edges
    assert not faces["straight"] & twistable
    assert not faces["staircase"] & pos_keys
    assert not faces["zero"] & pos_keys
    assert not pos_keys
