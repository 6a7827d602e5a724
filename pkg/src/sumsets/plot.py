"""Line charts of report columns as standalone SVG.

The output depends only on the report rows and the column choice: numbers
are printed with a fixed precision and nothing time- or platform-dependent
goes into the file, so equal inputs give byte-identical SVG.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

WIDTH, HEIGHT = 640, 400
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 130, 30, 50
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def cell_number(cell) -> Optional[float]:
    """A plottable float from a report cell, or None."""
    if isinstance(cell, bool) or cell is None:
        return None
    if isinstance(cell, (int, float, Fraction)):
        value = float(cell)
    elif isinstance(cell, dict) and isinstance(cell.get("value"), (int, float, Fraction)):
        value = float(cell["value"])
    else:
        return None
    return value if math.isfinite(value) else None


def _fmt(x: float) -> str:
    text = f"{x:.2f}"
    return "0.00" if text == "-0.00" else text


def _tick(x: float) -> str:
    return f"{x:.4g}"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _nice_range(lo: float, hi: float) -> Tuple[float, float]:
    if lo == hi:
        pad = abs(lo) * 0.1 or 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def emit_plot(
    report,
    columns: Optional[Sequence[str]] = None,
    x: str = "k",
    title: Optional[str] = None,
) -> str:
    """SVG line chart of the numeric ``columns`` of ``report.rows`` against ``x``.

    Columns without a single numeric entry are skipped with a warning; a
    report with one row gives one marker per series."""
    rows = list(report.rows)
    if not rows:
        raise ValueError("nothing to plot: the report has no rows")
    if columns is None:
        columns = [c for c in report.columns() if c != x]
    series: Dict[str, List[Tuple[float, float]]] = {}
    for col in columns:
        pts = []
        for i, row in enumerate(rows):
            xv = cell_number(row.get(x)) if x in row else float(i + 1)
            yv = cell_number(row.get(col))
            if xv is not None and yv is not None:
                pts.append((xv, yv))
        if pts:
            series[col] = pts
        else:
            log.warning("column %r has no numeric values; skipped", col)
    if not series:
        raise ValueError("nothing to plot: no column has numeric values")

    xs = [p[0] for pts in series.values() for p in pts]
    ys = [p[1] for pts in series.values() for p in pts]
    x_lo, x_hi = _nice_range(min(xs), max(xs))
    y_lo, y_hi = _nice_range(min(ys), max(ys))
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v):
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v):
        return MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle">{_escape(title)}</text>')
    # axes
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for i in range(5):
        xv = x_lo + (x_hi - x_lo) * i / 4
        yv = y_lo + (y_hi - y_lo) * i / 4
        out.append(f'<line x1="{_fmt(sx(xv))}" y1="{y0}" x2="{_fmt(sx(xv))}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(sx(xv))}" y="{y0 + 18}" text-anchor="middle">{_tick(xv)}</text>')
        out.append(f'<line x1="{x0 - 5}" y1="{_fmt(sy(yv))}" x2="{x0}" y2="{_fmt(sy(yv))}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{_fmt(sy(yv) + 4)}" text-anchor="end">{_tick(yv)}</text>')
    out.append(f'<text x="{x0 + plot_w / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">{_escape(x)}</text>')
    out.append(
        f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.1f})">value</text>'
    )
    # one polyline per series, plus markers and a legend entry
    for idx, (name, pts) in enumerate(series.items()):
        colour = PALETTE[idx % len(PALETTE)]
        coords = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in pts)
        if len(pts) > 1:
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        for a, b in pts:
            out.append(f'<circle cx="{_fmt(sx(a))}" cy="{_fmt(sy(b))}" r="2.5" fill="{colour}"/>')
        ly = MARGIN_TOP + 14 + 18 * idx
        lx = WIDTH - MARGIN_RIGHT + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 24}" y="{ly}">{_escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
