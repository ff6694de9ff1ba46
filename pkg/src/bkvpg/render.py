"""Static SVG drawings of grid path instances."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Iterable

from .grid import Instance

SCALE = 24
MARGIN = 1
MAX_GRID_LINES = 200


class UnknownPath(KeyError):
    pass


def _color(i: int) -> str:
    hue = (i * 137.508) % 360  # golden-angle spacing keeps neighbours distinct
    return f"hsl({hue:.1f},70%,42%)"


def _extent(instance: Instance):
    pts = [v for p in instance.paths for v in p.vertices]
    if not pts:
        return 0, 0, 10, 10
    xs, ys = [x for x, _ in pts], [y for _, y in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(instance: Instance, highlight: Iterable[int] = (), scale: int = SCALE) -> str:
    """Draw the grid, one polyline per path, highlighted ids stroked heavier.

    Raises UnknownPath if a highlight id is not a path of ``instance``.
    """
    highlight = set(highlight)
    ids = {p.id for p in instance.paths}
    missing = sorted(highlight - ids)
    if missing:
        raise UnknownPath(f"unknown path ids to highlight: {missing}")

    x0, y0, x1, y1 = _extent(instance)
    x0, y0, x1, y1 = x0 - MARGIN, y0 - MARGIN, x1 + MARGIN, y1 + MARGIN
    width, height = (x1 - x0) * scale, (y1 - y0) * scale

    def pos(x, y):
        # SVG y grows downward; flip so the drawing matches the grid's orientation
        return (x - x0) * scale, (y1 - y) * scale

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    grid = ET.SubElement(svg, "g", id="grid", stroke="#d0d0d0")
    grid.set("stroke-width", "1")
    step = max(1, -(-max(x1 - x0, y1 - y0) // MAX_GRID_LINES))
    for x in range(x0, x1 + 1, step):
        (a, b), (c, d) = pos(x, y0), pos(x, y1)
        ET.SubElement(grid, "line", x1=str(a), y1=str(b), x2=str(c), y2=str(d))
    for y in range(y0, y1 + 1, step):
        (a, b), (c, d) = pos(x0, y), pos(x1, y)
        ET.SubElement(grid, "line", x1=str(a), y1=str(b), x2=str(c), y2=str(d))

    paths = ET.SubElement(svg, "g", id="paths", fill="none")
    paths.set("stroke-linecap", "round")
    paths.set("stroke-linejoin", "round")
    for i, p in enumerate(sorted(instance.paths, key=lambda p: p.id)):
        heavy = p.id in highlight
        pts = " ".join("{},{}".format(*pos(x, y)) for x, y in p.vertices)
        g = ET.SubElement(paths, "g", id=f"path-{p.id}", stroke=_color(i))
        if highlight and not heavy:
            g.set("stroke-opacity", "0.45")
        g.set("class", "selected" if heavy else "path")
        line = ET.SubElement(g, "polyline", points=pts)
        line.set("stroke-width", str(max(2, scale // 4) * (2 if heavy else 1)))
        for x, y in (p.vertices[0], p.vertices[-1]):
            cx, cy = pos(x, y)
            ET.SubElement(g, "circle", cx=str(cx), cy=str(cy), r=str(max(2, scale // 6)),
                          fill=_color(i))
        tx, ty = pos(*p.vertices[0])
        label = ET.SubElement(g, "text", x=str(tx + 4), y=str(ty - 4), fill=_color(i),
                              stroke="none")
        label.set("font-size", str(max(8, scale // 2)))
        label.text = str(p.id)

    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
