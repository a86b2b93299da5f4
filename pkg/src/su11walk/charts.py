"""Minimal deterministic SVG charts for result tables.

Renders line and bar charts with axes, tick labels and a legend into a
self-contained SVG 1.1 document.  No timestamps or generated ids appear
in the output, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .config import ChartSpec
from .tables import ResultTable

WIDTH = 640.0
HEIGHT = 420.0
MARGIN_LEFT = 72.0
MARGIN_RIGHT = 24.0
MARGIN_TOP = 42.0
MARGIN_BOTTOM = 56.0

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class ChartColumnError(ValueError):
    """The chart spec references columns the table does not have."""


class EmptyTableError(RuntimeError):
    """The table has no data rows to draw."""


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _fmt_tick(value: float) -> str:
    text = f"{value:.6g}"
    return "0" if text == "-0" else text


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi] at a 1/2/5 spacing."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(target, 2)
    power = math.floor(math.log10(raw))
    base = raw / (10.0**power)
    for nice in (1.0, 2.0, 5.0, 10.0):
        if base <= nice:
            step = nice * (10.0**power)
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return ticks


def render_chart(table: ResultTable, spec: ChartSpec) -> str:
    """Render the requested columns of a table into an SVG document."""
    if not table.rows:
        raise EmptyTableError(f"table {table.name!r} has no rows to draw")
    missing = [c for c in (spec.x, *spec.series) if c not in table.columns]
    if missing:
        raise ChartColumnError(
            f"table {table.name!r} lacks columns {missing}; available: {table.columns}"
        )
    xs = [float(v) for v in table.column(spec.x)]
    series = [(name, [float(v) for v in table.column(name)]) for name in spec.series]

    x_lo, x_hi = min(xs), max(xs)
    y_values = [v for _, ys in series for v in ys]
    y_lo, y_hi = min(y_values), max(y_values)
    if spec.kind == "bar":
        y_lo = min(y_lo, 0.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - (0.0 if spec.kind == "bar" and y_lo == 0.0 else pad), y_hi + pad

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">',
        f'<rect x="0" y="0" width="{WIDTH:g}" height="{HEIGHT:g}" fill="white"/>',
    ]
    if spec.title:
        parts.append(
            f'<text x="{WIDTH / 2:g}" y="24" font-family="sans-serif" font-size="15" '
            f'text-anchor="middle">{escape(spec.title)}</text>'
        )

    # axes and ticks
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h
    parts.append(
        f'<g stroke="#333333" stroke-width="1">'
        f'<line x1="{_fmt(x0)}" y1="{_fmt(MARGIN_TOP)}" x2="{_fmt(x0)}" y2="{_fmt(y0)}"/>'
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0 + plot_w)}" y2="{_fmt(y0)}"/></g>'
    )
    tick_parts = ['<g stroke="#333333" stroke-width="1">']
    label_parts = ['<g font-family="sans-serif" font-size="11" fill="#111111">']
    for tick in _nice_ticks(x_lo, x_hi):
        x = px(tick)
        tick_parts.append(f'<line x1="{_fmt(x)}" y1="{_fmt(y0)}" x2="{_fmt(x)}" y2="{_fmt(y0 + 5)}"/>')
        label_parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y0 + 18)}" text-anchor="middle">{_fmt_tick(tick)}</text>'
        )
    for tick in _nice_ticks(y_lo, y_hi):
        y = py(tick)
        tick_parts.append(f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(y)}" x2="{_fmt(x0)}" y2="{_fmt(y)}"/>')
        label_parts.append(
            f'<text x="{_fmt(x0 - 8)}" y="{_fmt(y + 4)}" text-anchor="end">{_fmt_tick(tick)}</text>'
        )
    tick_parts.append("</g>")
    label_parts.append("</g>")
    parts.extend(tick_parts)
    parts.extend(label_parts)
    if spec.x_label:
        parts.append(
            f'<text x="{_fmt(x0 + plot_w / 2)}" y="{HEIGHT - 14:g}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{escape(spec.x_label)}</text>'
        )
    if spec.y_label:
        cy = MARGIN_TOP + plot_h / 2
        parts.append(
            f'<text x="18" y="{_fmt(cy)}" font-family="sans-serif" font-size="12" '
            f'text-anchor="middle" transform="rotate(-90 18 {_fmt(cy)})">{escape(spec.y_label)}</text>'
        )

    # data series: bars for the first series of a bar chart, markers/lines otherwise
    for idx, (name, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        if spec.kind == "bar" and idx == 0:
            bar_w = 0.8 * plot_w / max(len(xs), 1)
            zero = py(max(y_lo, min(0.0, y_hi)))
            bars = [f'<g fill="{color}" fill-opacity="0.85">']
            for x, y in zip(xs, ys):
                top = min(py(y), zero)
                height = abs(py(y) - zero)
                bars.append(
                    f'<rect x="{_fmt(px(x) - bar_w / 2)}" y="{_fmt(top)}" '
                    f'width="{_fmt(bar_w)}" height="{_fmt(height)}"/>'
                )
            bars.append("</g>")
            parts.extend(bars)
        elif spec.kind == "bar":
            dots = [f'<g fill="{color}">']
            for x, y in zip(xs, ys):
                dots.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="2.5"/>')
            dots.append("</g>")
            parts.extend(dots)
        else:
            points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
            parts.append(
                f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.6"/>'
            )

    # legend
    legend_x = MARGIN_LEFT + plot_w - 10
    legend_y = MARGIN_TOP + 8
    legend = ['<g font-family="sans-serif" font-size="11">']
    for idx, (name, _) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        y = legend_y + 16 * idx
        legend.append(
            f'<rect x="{_fmt(legend_x - 14)}" y="{_fmt(y - 9)}" width="10" height="10" fill="{color}"/>'
        )
        legend.append(
            f'<text x="{_fmt(legend_x - 18)}" y="{_fmt(y)}" text-anchor="end">{escape(name)}</text>'
        )
    legend.append("</g>")
    parts.extend(legend)

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
