"""Two-dimensional SVG figures: mix points over per-state staircase regions.

The rendering is deliberately plain, deterministic text so figures can be
golden-tested structurally: every marker and outline carries its data-space
coordinates in ``data-*`` attributes alongside the pixel geometry.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import PreconditionError
from .geometry import Being, pareto_frontier
from .mixing import Act, MixedSet

_PLOT_SIZE = 500.0
_MARGIN_LEFT = 55.0
_MARGIN_TOP = 30.0
_MARGIN_RIGHT = 25.0
_MARGIN_BOTTOM = 45.0

_OUTLINE_DASHES = ("6 3", "2 3", "8 2 2 2", "4 4")


def _g(x: float) -> str:
    return f"{x:.12g}"


def staircase_vertices(beings: Sequence[Being]) -> list[tuple[float, float]]:
    """Boundary of the dominated region of a finite 2-D set.

    Starts on the vertical axis at the height of the leftmost frontier point,
    steps across the frontier, and ends on the horizontal axis.
    """
    if any(b.dimension != 2 for b in beings):
        raise PreconditionError("staircase outlines are defined for two dimensions")
    front = pareto_frontier(list(beings))
    vertices = [(0.0, front[0].coords[1])]
    for i, b in enumerate(front):
        x, y = b.coords
        vertices.append((x, y))
        next_y = front[i + 1].coords[1] if i + 1 < len(front) else 0.0
        vertices.append((x, next_y))
    return vertices


def render_scenario_svg(act: Act, mix: MixedSet, title: str | None = None) -> str:
    """SVG with one staircase outline per state and one marker per mix point."""
    if act.dimension != 2:
        raise PreconditionError("plotting requires a two-dimensional scenario")

    everything = [b for s in act.per_state for b in s.beings] + list(mix.points)
    limit_x = max(1.0, 1.1 * max(b.coords[0] for b in everything))
    limit_y = max(1.0, 1.1 * max(b.coords[1] for b in everything))
    sx = _PLOT_SIZE / limit_x
    sy = _PLOT_SIZE / limit_y

    def px(x: float) -> str:
        return f"{_MARGIN_LEFT + x * sx:.2f}"

    def py(y: float) -> str:
        return f"{_MARGIN_TOP + _PLOT_SIZE - y * sy:.2f}"

    width = _MARGIN_LEFT + _PLOT_SIZE + _MARGIN_RIGHT
    height = _MARGIN_TOP + _PLOT_SIZE + _MARGIN_BOTTOM
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        lines.append(
            f'<text class="title" x="{width / 2:g}" y="20" text-anchor="middle" '
            f'font-size="14">{title}</text>'
        )

    lines.append('<g class="grid" stroke="#dddddd" stroke-width="1">')
    for gx in range(1, math.floor(limit_x) + 1):
        lines.append(
            f'<line class="gridline" x1="{px(gx)}" y1="{py(0)}" '
            f'x2="{px(gx)}" y2="{py(limit_y)}"/>'
        )
    for gy in range(1, math.floor(limit_y) + 1):
        lines.append(
            f'<line class="gridline" x1="{px(0)}" y1="{py(gy)}" '
            f'x2="{px(limit_x)}" y2="{py(gy)}"/>'
        )
    lines.append("</g>")

    lines.append('<g class="axes" stroke="black" stroke-width="1.5">')
    lines.append(f'<line class="axis" x1="{px(0)}" y1="{py(0)}" x2="{px(limit_x)}" y2="{py(0)}"/>')
    lines.append(f'<line class="axis" x1="{px(0)}" y1="{py(0)}" x2="{px(0)}" y2="{py(limit_y)}"/>')
    lines.append("</g>")

    lines.append('<g class="ticks" font-size="10" fill="#444444">')
    for gx in range(0, math.floor(limit_x) + 1):
        lines.append(
            f'<text class="tick" x="{px(gx)}" y="{_MARGIN_TOP + _PLOT_SIZE + 14:.2f}" '
            f'text-anchor="middle">{gx}</text>'
        )
    for gy in range(0, math.floor(limit_y) + 1):
        lines.append(
            f'<text class="tick" x="{_MARGIN_LEFT - 6:.2f}" y="{py(gy)}" '
            f'text-anchor="end" dominant-baseline="middle">{gy}</text>'
        )
    lines.append("</g>")

    for index, capability_set in enumerate(act.per_state):
        label = capability_set.label or f"state_{index + 1}"
        vertices = staircase_vertices(capability_set.beings)
        data = " ".join(f"{_g(x)},{_g(y)}" for x, y in vertices)
        pixels = " ".join(f"{px(x)},{py(y)}" for x, y in vertices)
        dash = _OUTLINE_DASHES[index % len(_OUTLINE_DASHES)]
        lines.append(
            f'<polyline class="state-outline" data-state="{label}" '
            f'data-vertices="{data}" points="{pixels}" fill="none" '
            f'stroke="#555555" stroke-width="1.5" stroke-dasharray="{dash}"/>'
        )
        for b in capability_set.beings:
            x, y = b.coords
            lines.append(
                f'<rect class="state-point" data-state="{label}" data-x="{_g(x)}" '
                f'data-y="{_g(y)}" x="{float(px(x)) - 3.5:.2f}" '
                f'y="{float(py(y)) - 3.5:.2f}" width="7" height="7" fill="#222222"/>'
            )

    for point in mix.points:
        x, y = point.coords
        lines.append(
            f'<circle class="mix-point" data-x="{_g(x)}" data-y="{_g(y)}" '
            f'cx="{px(x)}" cy="{py(y)}" r="4.5" fill="#888888" stroke="black"/>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
