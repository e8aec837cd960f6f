"""SVG pictures of nets with rational coordinates.

Points are drawn in an affine chart.  The default chart is z = 1; when a
point or a line of the net lies on z = 0 another small integer line is used
as the line at infinity so that nothing is lost.  Anything that still sits
at infinity is listed in the legend.  Output is a pure function of the input.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import NonRealConfiguration, SingularTransform
from .field import QQ
from .geometry import ProjLine, ProjTransform, incident, line
from .net import KNetConfig

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
SIZE = 600


def _chart_candidates(bound: int = 3):
    yield line(0, 0, 1)
    vecs = sorted(
        (v for v in product(range(-bound, bound + 1), repeat=3) if any(v)),
        key=lambda v: (sum(abs(x) for x in v), [abs(x) for x in v[::-1]], v[::-1]),
    )
    seen = set()
    for v in vecs:
        l = line(*v)
        if l not in seen:
            seen.add(l)
            yield l


def choose_chart(config: KNetConfig) -> ProjLine:
    """The first chart line (z = 0 preferred) avoiding every point and line."""
    lines = set(config.lines())
    for c in _chart_candidates():
        if c in lines:
            continue
        if any(incident(p, c) for p in config.points):
            continue
        return c
    return line(0, 0, 1)


def _chart_transform(chart: ProjLine) -> ProjTransform:
    """A transform whose third row is ``chart``, so chart -> z = 0."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for a, b in ((0, 1), (0, 2), (1, 2)):
        try:
            return ProjTransform([basis[a], basis[b], chart.coords], QQ)
        except SingularTransform:
            continue
    raise AssertionError("unreachable: some pair of basis rows completes a nonzero line")


def _fmt(x: Fraction) -> str:
    s = f"{float(x):.3f}"
    return "0.000" if s == "-0.000" else s


def _clip(a: Fraction, b: Fraction, c: Fraction, box) -> tuple | None:
    """Segment of ax + by + c = 0 inside the box (xmin, xmax, ymin, ymax)."""
    xmin, xmax, ymin, ymax = box
    pts = set()
    if b != 0:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin <= y <= ymax:
                pts.add((x, y))
    if a != 0:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin <= x <= xmax:
                pts.add((x, y))
    if len(pts) < 2:
        return None
    pts = sorted(pts)
    return pts[0], pts[-1]


def render_svg(config: KNetConfig, viewbox: Sequence | None = None, size: int = SIZE,
               chart: ProjLine | None = None) -> str:
    """SVG text of a net over Q; ``viewbox`` is (xmin, xmax, ymin, ymax) in
    chart coordinates and defaults to the points' bounding box plus margin."""
    if not config.field.is_rational:
        raise NonRealConfiguration(
            f"net is defined over {config.field.name}; only rational nets are drawn"
        )
    chart = chart if chart is not None else choose_chart(config)
    T = _chart_transform(chart)

    finite, ideal_points = [], []
    for p in config.points:
        x, y, z = (c.to_fraction() for c in T.apply(p).coords)
        if z == 0:
            ideal_points.append(p)
        else:
            finite.append((x / z, y / z))

    if viewbox is None:
        xs = [x for x, _ in finite] or [Fraction(0)]
        ys = [y for _, y in finite] or [Fraction(0)]
        span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
        margin = span / 4
        cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
        half = span / 2 + margin
        box = (cx - half, cx + half, cy - half, cy + half)
    else:
        box = tuple(Fraction(v) for v in viewbox)
        if box[0] >= box[1] or box[2] >= box[3]:
            raise ValueError("viewbox must satisfy xmin < xmax and ymin < ymax")
    xmin, xmax, ymin, ymax = box
    scale = Fraction(size) / max(xmax - xmin, ymax - ymin)

    def px(x, y):
        return _fmt((x - xmin) * scale), _fmt((ymax - y) * scale)

    out = [
        f'<!-- chart line at infinity: {escape(str(chart))} -->',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black"/>',
    ]
    legend = []
    for ci, cls in enumerate(config.classes):
        color = PALETTE[ci % len(PALETTE)]
        for li, l in enumerate(cls):
            label = f"l{ci + 1}{li + 1}"
            a, b, c = (x.to_fraction() for x in T.apply_line(l).coords)
            if a == 0 and b == 0:
                legend.append(f"{label} {l} at infinity")
                continue
            seg = _clip(a, b, c, box)
            if seg is None:
                legend.append(f"{label} {l} outside the view")
                continue
            (x1, y1), (x2, y2) = seg
            X1, Y1 = px(x1, y1)
            X2, Y2 = px(x2, y2)
            out.append(
                f'<line class="net-line" data-class="{ci + 1}" data-label="{label}" '
                f'x1="{X1}" y1="{Y1}" x2="{X2}" y2="{Y2}" stroke="{color}" stroke-width="2"/>'
            )
    outside = 0
    for x, y in finite:
        if not (xmin <= x <= xmax and ymin <= y <= ymax):
            outside += 1
            continue
        X, Y = px(x, y)
        out.append(f'<circle class="net-point" cx="{X}" cy="{Y}" r="4" fill="black"/>')
    if outside:
        legend.append(f"{outside} points outside the view")
    for p in ideal_points:
        legend.append(f"point {p} at infinity")
    for i, text in enumerate(legend):
        out.append(f'<text class="legend" x="4" y="{size + 14 + 12 * i}" font-size="11">{escape(text)}</text>')
    height = size + 16 + 12 * len(legend)
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="0 0 {size} {height}">',
    ]
    return "\n".join(head + out + ["</svg>"]) + "\n"
