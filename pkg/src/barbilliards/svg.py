"""Hand-emitted SVG scenes of the unit disk.

Primitive markup only, with repr-formatted coordinates, so identical inputs
produce byte-identical documents.  The y axis is flipped at the coordinate
level to keep mathematical orientation on screen.
"""

from __future__ import annotations

import math

VIEWBOX = "-1.05 -1.05 2.1 2.1"
SIZE = 640
ELLIPSE_SAMPLES = 256


def _fmt(x: float) -> str:
    return repr(float(x))


def _xy(point) -> str:
    x, y = point
    return f"{_fmt(x)},{_fmt(-y)}"


def circle(center, radius, stroke="#444444", width=0.004, fill="none") -> str:
    cx, cy = center
    return (
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(radius)}" '
        f'fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
    )


def dot(point, radius=0.012, fill="#000000") -> str:
    x, y = point
    return f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}" fill="{fill}"/>'


def polygon(points, stroke="#000000", width=0.006, fill="none") -> str:
    pts = " ".join(_xy(p) for p in points)
    return (
        f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" '
        f'stroke-width="{_fmt(width)}"/>'
    )


def polyline(points, stroke="#1f6fb2", width=0.006) -> str:
    pts = " ".join(_xy(p) for p in points)
    return (
        f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
        f'stroke-width="{_fmt(width)}"/>'
    )


def group(layer_id: str, elements) -> str:
    body = "\n".join("    " + e for e in elements)
    return f'  <g id="{layer_id}">\n{body}\n  </g>'


def document(layers) -> str:
    """Assemble the SVG document from (layer id, elements) pairs."""
    groups = "\n".join(group(lid, els) for lid, els in layers if els)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{VIEWBOX}" '
        f'width="{SIZE}" height="{SIZE}">\n{groups}\n</svg>\n'
    )


def ellipse_outline(ellipse, stroke="#b2321f", width=0.005) -> str:
    pts = [
        ellipse.point_at(2.0 * math.pi * i / ELLIPSE_SAMPLES)
        for i in range(ELLIPSE_SAMPLES)
    ]
    return polygon(pts, stroke=stroke, width=width)


def scene(
    triangle=None,
    orbit=None,
    ellipse=None,
    inscribed=(),
    chord=None,
    arcs=(),
) -> str:
    """Standard layered scene: unit circle plus whatever is supplied.

    orbit is a sequence of angles in turns rendered as the chord polyline;
    inscribed is a sequence of angle triples; chord is a point pair.
    """
    layers: list[tuple[str, list[str]]] = []
    layers.append(("unit-circle", [circle((0.0, 0.0), 1.0)]))
    if triangle is not None:
        layers.append(
            ("obstacle", [polygon([v.xy for v in triangle.vertices], stroke="#000000")])
        )
    if chord is not None:
        p, q = chord
        layers.append(("chord", [dot(p.xy), dot(q.xy)]))
    if ellipse is not None:
        layers.append(("tangency-ellipse", [ellipse_outline(ellipse)]))
    if arcs:
        layers.append(
            ("arc-circles", [circle(a.center, a.radius, stroke="#777777") for a in arcs])
        )
    if inscribed:
        els = []
        for angles in inscribed:
            pts = [
                (math.cos(2.0 * math.pi * a), math.sin(2.0 * math.pi * a))
                for a in angles
            ]
            els.append(polygon(pts, stroke="#1f8f4d", width=0.005))
        layers.append(("inscribed", els))
    if orbit is not None:
        pts = [
            (math.cos(2.0 * math.pi * a), math.sin(2.0 * math.pi * a)) for a in orbit
        ]
        els = [polyline(pts)]
        if pts:
            els.append(dot(pts[0], radius=0.016, fill="#1f6fb2"))
        layers.append(("orbit", els))
    return document(layers)
