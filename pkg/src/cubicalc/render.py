"""SVG rendering of two-dimensional state spaces.

Illustrative output in the style of the usual progress-graph pictures: the
ambient box framed, the forbidden region filled light gray, the model's
maximal cubes stroked, the doomed region hatched darker, and deadlock points
drawn as filled circles.  Coordinates are scaled by a fixed factor with the
vertical axis flipped; unbounded cubes are clamped to the ambient box.
"""

from __future__ import annotations

from .areas import Cube, CubicalArea, cube_intersect

SCALE = 40  # pixels per coordinate unit
MARGIN = 24


def _rect(cube: Cube, ambient_box: Cube, y_top: float, style: str) -> str:
    clamped = cube_intersect(cube, ambient_box)
    if clamped is None:
        return ""
    (x0, _), (x1, _) = clamped.factors[0]._lo_key, clamped.factors[0]._hi_key
    (y0, _), (y1, _) = clamped.factors[1]._lo_key, clamped.factors[1]._hi_key
    x = MARGIN + float(x0) * SCALE
    y = MARGIN + (y_top - float(y1)) * SCALE
    w = (float(x1) - float(x0)) * SCALE
    h = (float(y1) - float(y0)) * SCALE
    return f'<rect x="{x:g}" y="{y:g}" width="{w:g}" height="{h:g}" {style}/>'


def render_svg(ambient_box: Cube,
               forbidden: CubicalArea | None = None,
               model: CubicalArea | None = None,
               doomed: CubicalArea | None = None,
               deadlocks=()) -> str:
    """Compose an SVG 1.1 document for a 2-D scene."""
    if ambient_box.dim != 2:
        raise ValueError("SVG output is only available for 2-dimensional scenes")
    x_top = float(ambient_box.factors[0].hi.value)
    y_top = float(ambient_box.factors[1].hi.value)
    width = 2 * MARGIN + x_top * SCALE
    height = 2 * MARGIN + y_top * SCALE

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        _rect(ambient_box, ambient_box, y_top,
              'fill="white" stroke="black" stroke-width="1"'),
    ]
    if forbidden is not None:
        for cube in forbidden.cubes:
            parts.append(_rect(cube, ambient_box, y_top,
                               'fill="#d3d3d3" stroke="#999999" stroke-width="0.5"'))
    if model is not None:
        for cube in model.cubes:
            parts.append(_rect(cube, ambient_box, y_top,
                               'fill="none" stroke="black" stroke-width="0.8"'))
    if doomed is not None:
        for cube in doomed.cubes:
            parts.append(_rect(cube, ambient_box, y_top,
                               'fill="#8a8a8a" fill-opacity="0.6" stroke="none"'))
    for p in deadlocks:
        cx = MARGIN + float(p[0]) * SCALE
        cy = MARGIN + (y_top - float(p[1])) * SCALE
        parts.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="5" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(p for p in parts if p) + "\n"
