"""SVG 1.1 drawings of instances and routes."""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Sequence

from .triangulation import Triangulation

SVG_NS = "http://www.w3.org/2000/svg"
ET.register_namespace("", SVG_NS)

CANVAS = 800.0
MARGIN = 40.0
_CORNERS = ((0.5, math.sqrt(3) / 2), (0.0, 0.0), (1.0, 0.0))


def barycentric_positions(g: Triangulation) -> list[tuple[float, float]]:
    """Place each node at its normalized rank triple inside a unit equilateral triangle."""
    out = []
    for c in g.coords:
        total = sum(c)
        x = sum(r * corner[0] for r, corner in zip(c, _CORNERS)) / total
        y = sum(r * corner[1] for r, corner in zip(c, _CORNERS)) / total
        out.append((x, y))
    return out


def _fit(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (CANVAS - 2 * MARGIN) / span
    # SVG y grows downward.
    return [(MARGIN + (x - min(xs)) * scale, CANVAS - MARGIN - (y - min(ys)) * scale) for x, y in points]


def _num(x: float) -> str:
    return f"{x:.2f}"


def render_svg(g: Triangulation, route: Sequence[int] | None = None) -> str:
    pts = _fit(g.positions if g.positions is not None else barycentric_positions(g))
    svg = ET.Element(
        f"{{{SVG_NS}}}svg",
        {"version": "1.1", "width": _num(CANVAS), "height": _num(CANVAS), "viewBox": f"0 0 {CANVAS:g} {CANVAS:g}"},
    )
    defs = ET.SubElement(svg, f"{{{SVG_NS}}}defs")
    marker = ET.SubElement(
        defs,
        f"{{{SVG_NS}}}marker",
        {"id": "hop", "viewBox": "0 0 10 10", "refX": "9", "refY": "5",
         "markerWidth": "6", "markerHeight": "6", "orient": "auto"},
    )
    ET.SubElement(marker, f"{{{SVG_NS}}}path", {"d": "M 0 0 L 10 5 L 0 10 z", "fill": "#c0392b"})

    edges = ET.SubElement(svg, f"{{{SVG_NS}}}g", {"class": "edges", "stroke": "#888888", "stroke-width": "1"})
    for u, v in g.edges():
        (x1, y1), (x2, y2) = pts[u], pts[v]
        ET.SubElement(edges, f"{{{SVG_NS}}}line",
                      {"x1": _num(x1), "y1": _num(y1), "x2": _num(x2), "y2": _num(y2)})

    if route:
        layer = ET.SubElement(svg, f"{{{SVG_NS}}}g", {"class": "route"})
        ET.SubElement(
            layer,
            f"{{{SVG_NS}}}polyline",
            {
                "points": " ".join(f"{_num(pts[x][0])},{_num(pts[x][1])}" for x in route),
                "fill": "none",
                "stroke": "#c0392b",
                "stroke-width": "3",
                "marker-mid": "url(#hop)",
                "marker-end": "url(#hop)",
            },
        )

    nodes = ET.SubElement(svg, f"{{{SVG_NS}}}g", {"class": "nodes", "fill": "#1f4e79"})
    for u, (x, y) in enumerate(pts):
        circle = ET.SubElement(nodes, f"{{{SVG_NS}}}circle",
                               {"cx": _num(x), "cy": _num(y), "r": "6" if g.is_external(u) else "3"})
        ET.SubElement(circle, f"{{{SVG_NS}}}title").text = f"{u} {tuple(g.coords[u])}"

    labels = ET.SubElement(svg, f"{{{SVG_NS}}}g", {"class": "labels", "font-family": "sans-serif", "font-size": "16"})
    for i, a in enumerate(g.anchors):
        x, y = pts[a]
        ET.SubElement(labels, f"{{{SVG_NS}}}text", {"x": _num(x + 8), "y": _num(y - 8)}).text = f"A{i + 1}"

    body = ET.tostring(svg, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
