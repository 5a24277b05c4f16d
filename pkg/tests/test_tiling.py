from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from dp3castles.quiver import dp3_quiver
from dp3castles.tiling import (
    BLACK,
    SCALE,
    WHITE,
    build_atlas,
    dual_quiver,
    edge_length_tag,
    is_hexagon_center,
    locate,
    triangle_faces,
    vertex_color,
)

ATLAS = build_atlas()
anchors = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).map(lambda p: (p[0] * SCALE, p[1] * SCALE))


def test_labels_per_domain():
    assert sorted(f.label for f in ATLAS.faces) == [1, 2, 3, 4, 5, 6]


def test_colour_balance_per_domain():
    colours = Counter(c for _, c, _ in ATLAS.vertices)
    assert colours == {BLACK: 3, WHITE: 3}


def test_twelve_edges_per_domain():
    assert len(ATLAS.edges) == 12
    assert Counter(tag for _, _, tag in ATLAS.edges) == {"long": 6, "short": 6}


def test_dual_is_dp3():
    q = dual_quiver(ATLAS)
    assert q.arrow_count() == 12 and len(q.vertices) == 6
    arrows = {a for a, _ in q.arrows}
    assert all((t, s) not in arrows and s != t for s, t in arrows)
    assert q == dp3_quiver()


def test_origin_is_contour_start():
    assert is_hexagon_center((0, 0))
    assert locate((0, 0))[1] == "H"


@given(anchors)
def test_periodic_labels(h):
    shifted = triangle_faces((h[0] + SCALE, h[1] + SCALE))
    assert [f.label for f in triangle_faces(h)] == [f.label for f in shifted]


@given(anchors)
def test_faces_are_bipartite_quads(h):
    for f in triangle_faces(h):
        cols = [vertex_color(v) for v in f.vertices]
        assert all(cols[r] != cols[(r + 1) % 4] for r in range(4))
        # midpoint of the tip-to-centre diagonal is strictly inside the kite
        tip, centre = f.vertices[0], f.vertices[2]
        inside = ((tip[0] + centre[0]) // 2, (tip[1] + centre[1]) // 2)
        assert locate(inside)[:2] == ("face", f.label)


def test_long_edges_touch_lattice_points():
    for a, b, tag in ATLAS.edges:
        assert (tag == "long") == (is_hexagon_center(a) or is_hexagon_center(b))
        assert edge_length_tag(frozenset((a, b))) == tag


def test_atlas_json_is_stable():
    assert build_atlas().to_json() == ATLAS.to_json()
