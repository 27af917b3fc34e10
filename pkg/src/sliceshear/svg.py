"""Deterministic SVG rendering of chart documents.

Charts use the (t-s, s) plane: one marker per declared class at
(stem, filtration), one arrow per differential, and dashed guide lines whose
exact rational intercepts are clipped to the window before any conversion to
pixel coordinates.  Rendering the same document twice yields identical bytes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union
from xml.sax.saxutils import escape

from .dsl import ChartDocument, DslSemanticError, GuideSpec
from .reps import Line, line_L
from .vanishing import boundary_line, vanishing_line

__all__ = ["emit_svg"]

CELL = 36
PAD = 48

_STYLE = """\
  <style>
    text { font-family: monospace; font-size: 10px; fill: #222222; }
    .grid { stroke: #eeeeee; stroke-width: 1; }
    .axis { stroke: #555555; stroke-width: 1; }
    .guide { stroke: #888888; stroke-dasharray: 4 3; fill: none; }
    .guide-label { fill: #666666; }
    .cls { fill: #111111; }
    .d-seed { stroke: #1f77b4; stroke-width: 1.5; fill: none; }
    .d-transported { stroke: #d62728; stroke-width: 1.5; fill: none; }
    .d-generated { stroke: #2ca02c; stroke-width: 1.5; fill: none; }
    .d-user { stroke: #111111; stroke-width: 1.5; fill: none; }
    .warning { fill: #bb0000; font-size: 11px; }
  </style>"""


def _fmt(v: Union[int, float, Fraction]) -> str:
    s = f"{float(v):.2f}"
    s = s.rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _guide_line(g: GuideSpec, doc: ChartDocument) -> tuple[Line, str]:
    n = doc.group.exponent - 1
    if g.kind == "L":
        return line_L(doc.grading, g.k), f"L{g.k}"
    if g.kind == "vanish":
        return vanishing_line(doc.grading, g.h, n, g.k), f"N k={g.k}"
    return boundary_line(doc.grading, n), "boundary"


def _clip(line: Line, window: tuple[int, int, int]):
    """Clip s = slope*x + intercept to the window box, exactly."""
    x_min, x_max, s_max = window
    if line.slope == 0:
        s = line.intercept
        if 0 <= s <= s_max:
            return (Fraction(x_min), s), (Fraction(x_max), s)
        return None
    lo = max(Fraction(x_min), (Fraction(0) - line.intercept) / line.slope)
    hi = min(Fraction(x_max), (Fraction(s_max) - line.intercept) / line.slope)
    if lo > hi:
        return None
    return (lo, line.at(lo)), (hi, line.at(hi))


def emit_svg(doc: ChartDocument) -> bytes:
    """Render a chart document; requires the window to be set."""
    if doc.window is None:
        raise DslSemanticError("cannot render a chart without a window")
    x_min, x_max, s_max = doc.window
    width = 2 * PAD + (x_max - x_min) * CELL
    height = 2 * PAD + s_max * CELL

    def X(x: Union[int, Fraction]) -> Fraction:
        return Fraction(PAD) + (Fraction(x) - x_min) * CELL

    def Y(s: Union[int, Fraction]) -> Fraction:
        return Fraction(height - PAD) - Fraction(s) * CELL

    def inside(x: int, s: int) -> bool:
        return x_min <= x <= x_max and 0 <= s <= s_max

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        _STYLE,
        "  <defs>",
        '    <marker id="arrow" viewBox="0 0 8 8" refX="7" refY="4" '
        'markerWidth="6" markerHeight="6" orient="auto-start-reverse">',
        '      <path d="M 0 0 L 8 4 L 0 8 z" fill="context-stroke"/>',
        "    </marker>",
        "  </defs>",
    ]

    # grid and integer tick labels
    for x in range(x_min, x_max + 1):
        px = _fmt(X(x))
        out.append(
            f'  <line class="grid" x1="{px}" y1="{_fmt(Y(0))}" '
            f'x2="{px}" y2="{_fmt(Y(s_max))}"/>'
        )
        out.append(
            f'  <text x="{px}" y="{_fmt(Y(0) + 14)}" text-anchor="middle">{x}</text>'
        )
    for s in range(0, s_max + 1):
        py = _fmt(Y(s))
        out.append(
            f'  <line class="grid" x1="{_fmt(X(x_min))}" y1="{py}" '
            f'x2="{_fmt(X(x_max))}" y2="{py}"/>'
        )
        out.append(
            f'  <text x="{_fmt(X(x_min) - 8)}" y="{_fmt(Y(s) + 3)}" '
            f'text-anchor="end">{s}</text>'
        )

    # axes: the filtration-0 row and, when visible, the stem-0 column
    out.append(
        f'  <line class="axis" x1="{_fmt(X(x_min))}" y1="{_fmt(Y(0))}" '
        f'x2="{_fmt(X(x_max))}" y2="{_fmt(Y(0))}"/>'
    )
    if x_min <= 0 <= x_max:
        out.append(
            f'  <line class="axis" x1="{_fmt(X(0))}" y1="{_fmt(Y(0))}" '
            f'x2="{_fmt(X(0))}" y2="{_fmt(Y(s_max))}"/>'
        )

    for g in doc.guides:
        line, label = _guide_line(g, doc)
        seg = _clip(line, doc.window)
        if seg is None:
            continue
        (xa, sa), (xb, sb) = seg
        out.append(
            f'  <line class="guide" x1="{_fmt(X(xa))}" y1="{_fmt(Y(sa))}" '
            f'x2="{_fmt(X(xb))}" y2="{_fmt(Y(sb))}"/>'
        )
        out.append(
            f'  <text class="guide-label" x="{_fmt(X(xb) + 4)}" '
            f'y="{_fmt(Y(sb) - 4)}">{escape(label)}</text>'
        )

    visible = 0
    for d in doc.diffs:
        sx, sy = d.source.stem, d.source.filtration
        tx, ty = d.target.stem, d.target.filtration
        if not (inside(sx, sy) and inside(tx, ty)):
            continue
        visible += 1
        out.append(
            f'  <line class="d-{d.provenance}" x1="{_fmt(X(sx))}" y1="{_fmt(Y(sy))}" '
            f'x2="{_fmt(X(tx))}" y2="{_fmt(Y(ty))}" marker-end="url(#arrow)"/>'
        )
    for name, m in doc.classes:
        x, s = m.stem, m.filtration
        if m.is_zero or not inside(x, s):
            continue
        visible += 1
        out.append(
            f'  <circle class="cls" cx="{_fmt(X(x))}" cy="{_fmt(Y(s))}" r="3.5"/>'
        )
        out.append(
            f'  <text x="{_fmt(X(x) + 6)}" y="{_fmt(Y(s) - 6)}">{escape(name)}</text>'
        )

    if (doc.classes or doc.diffs) and visible == 0:
        out.append(
            f'  <text class="warning" x="{PAD}" y="{PAD - 24}">'
            "warning: window excludes every declared item</text>"
        )

    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
