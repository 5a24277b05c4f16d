import xml.etree.ElementTree as ET

from dp3castles.castle import build_castle
from dp3castles.minmatch import construct
from dp3castles.render import build_scene, render_castle

NS = {"svg": "http://www.w3.org/2000/svg"}


def _group(root, name):
    return root.find(f"svg:g[@id='{name}']", NS)


def test_deterministic():
    c = build_castle(1, 1, 1)
    res = construct(c)
    a = render_castle(c, res.matching, res.sectors)
    b = render_castle(build_castle(1, 1, 1), construct(build_castle(1, 1, 1)).matching, res.sectors)
    assert a == b


def test_graph_only_drawing():
    c = build_castle(0, 1, 1)
    root = ET.fromstring(render_castle(c))
    assert _group(root, "matched") is None and _group(root, "zero") is None
    assert len(_group(root, "edge")) == len(c.edges)
    assert len(_group(root, "vertex")) == len(c.vertices)


def test_each_edge_drawn_once():
    c = build_castle(-1, 3, 1)
    scene = build_scene(c)
    assert len(scene.layers["edge"]) == len(set(scene.layers["edge"])) == len(c.edges)


def test_worked_example_picture():
    c = build_castle(4, 3, 2)
    res = construct(c)
    root = ET.fromstring(render_castle(c, res.matching, res.sectors))
    assert len(_group(root, "matched")) == len(c.vertices) // 2
    assert len(_group(root, "straight")) == 2
    assert len(_group(root, "staircase")) == 2
    assert len(_group(root, "zero")) == 1
    assert _group(root, "positive") is None  # the minimum has no positive face
    assert root.find("svg:title", NS).text == "castle 4 3 2"
    assert 'stroke="#1f77b4"' in ET.tostring(_group(root, "zero")[0]).decode()


def test_no_negative_zero_coordinates():
    assert "-0.00" not in render_castle(build_castle(2, 1, 1))
