import xml.etree.ElementTree as ET

import pytest

from bkvpg.grid import Instance
from bkvpg.render import UnknownPath, render_svg

from conftest import five_cycle

NS = {"s": "http://www.w3.org/2000/svg"}


def test_parses_and_has_one_group_per_path():
    root = ET.fromstring(render_svg(five_cycle()))
    groups = root.findall("s:g[@id='paths']/s:g", NS)
    assert [g.get("id") for g in groups] == [f"path-{i}" for i in range(5)]
    assert len({g.get("stroke") for g in groups}) == 5


def test_highlight_is_heavier():
    root = ET.fromstring(render_svg(five_cycle(), highlight=[0, 2]))
    width = {
        g.get("id"): float(g.find("s:polyline", NS).get("stroke-width"))
        for g in root.findall("s:g[@id='paths']/s:g", NS)
    }
    assert width["path-0"] > width["path-1"]
    assert width["path-2"] == width["path-0"]


def test_unknown_highlight():
    with pytest.raises(UnknownPath):
        render_svg(five_cycle(), highlight=[99])


def test_empty_instance_grid_only():
    root = ET.fromstring(render_svg(Instance(1, ())))
    assert root.findall("s:g[@id='paths']/s:g", NS) == []
    assert len(root.findall("s:g[@id='grid']/s:line", NS)) > 0


def test_y_axis_points_up():
    root = ET.fromstring(render_svg(five_cycle(), scale=10))
    poly = root.find("s:g[@id='paths']/s:g[@id='path-1']/s:polyline", NS)
    (x0, y0), (x1, y1) = [tuple(map(float, p.split(","))) for p in poly.get("points").split()]
    assert x0 == x1 and y1 < y0  # (4,0) -> (4,4) moves up the page
