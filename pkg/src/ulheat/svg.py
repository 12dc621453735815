"""Minimal native SVG line/scatter plots.

Deterministic output: fixed canvas geometry, coordinates rounded to two
decimals, no timestamps or generated ids, so rerunning a plot command
reproduces the file byte for byte.  Log axes tick at powers of ten,
linear axes use a 1-2-5 ladder.  No plotting dependency; the emitted
markup is plain polylines, circles, and text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

_CANVAS_W = 640.0
_CANVAS_H = 440.0
_MARGIN_L = 64.0
_MARGIN_R = 16.0
_MARGIN_T = 28.0
_MARGIN_B = 48.0

_FG = "#1a1a1a"
_GRID = "#d8d8d8"
_SERIES_COLORS = ("#1f6fb2", "#c44e52", "#2a8a4a", "#8a5cb8")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """1-2-5 ladder ticks covering [lo, hi]."""
    if not (hi > lo):
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if mult * mag >= raw:
            step = mult * mag
            break
    first = math.ceil(lo / step)
    return [k * step for k in range(first, math.floor(hi / step) + 1)]


def _log_ticks(lo: float, hi: float) -> list[float]:
    """Powers of ten inside [lo, hi]; endpoint decades if none interior."""
    ticks = [10.0 ** k for k in range(math.ceil(math.log10(lo) - 1e-9),
                                      math.floor(math.log10(hi) + 1e-9) + 1)]
    return ticks or [lo, hi]


def _tick_label(v: float) -> str:
    if v != 0.0 and (abs(v) >= 1e4 or abs(v) < 1e-3):
        exp = math.floor(math.log10(abs(v)) + 1e-12)
        mant = v / 10.0 ** exp
        if abs(mant - 1.0) < 1e-9:
            return f"1e{exp}"
        return f"{mant:.3g}e{exp}"
    return f"{v:.6g}"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


@dataclass
class Figure:
    """One plot: series are added, then rendered with to_svg."""

    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    xlog: bool = False
    ylog: bool = False
    _series: list = field(default_factory=list)

    def add_line(self, xs, ys, label: str = "", dashed: bool = False) -> None:
        self._series.append(("line", list(map(float, xs)), list(map(float, ys)),
                             label, dashed))

    def add_points(self, xs, ys, label: str = "") -> None:
        self._series.append(("points", list(map(float, xs)), list(map(float, ys)),
                             label, False))

    def _limits(self) -> tuple[float, float, float, float]:
        xs = [x for s in self._series for x, y in zip(s[1], s[2])
              if math.isfinite(x) and math.isfinite(y)
              and (not self.xlog or x > 0) and (not self.ylog or y > 0)]
        ys = [y for s in self._series for x, y in zip(s[1], s[2])
              if math.isfinite(x) and math.isfinite(y)
              and (not self.xlog or x > 0) and (not self.ylog or y > 0)]
        if not xs:
            raise ValueError("nothing plottable: no finite points in range")
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        if self.xlog:
            pad = (x1 / x0) ** 0.05 if x1 > x0 else 2.0
            x0, x1 = x0 / pad, x1 * pad
        else:
            pad = 0.05 * (x1 - x0) or max(1.0, abs(x0))
            x0, x1 = x0 - pad, x1 + pad
        if self.ylog:
            pad = (y1 / y0) ** 0.05 if y1 > y0 else 2.0
            y0, y1 = y0 / pad, y1 * pad
        else:
            pad = 0.05 * (y1 - y0) or max(1.0, abs(y0))
            y0, y1 = y0 - pad, y1 + pad
        return x0, x1, y0, y1

    def to_svg(self) -> str:
        x0, x1, y0, y1 = self._limits()
        px0, px1 = _MARGIN_L, _CANVAS_W - _MARGIN_R
        py0, py1 = _CANVAS_H - _MARGIN_B, _MARGIN_T

        def sx(x: float) -> float:
            t = ((math.log10(x) - math.log10(x0)) / (math.log10(x1) - math.log10(x0))
                 if self.xlog else (x - x0) / (x1 - x0))
            return px0 + t * (px1 - px0)

        def sy(y: float) -> float:
            t = ((math.log10(y) - math.log10(y0)) / (math.log10(y1) - math.log10(y0))
                 if self.ylog else (y - y0) / (y1 - y0))
            return py0 + t * (py1 - py0)

        out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
               f'width="{_fmt(_CANVAS_W)}" height="{_fmt(_CANVAS_H)}" '
               f'viewBox="0 0 {_fmt(_CANVAS_W)} {_fmt(_CANVAS_H)}" '
               f'font-family="sans-serif" font-size="12">',
               f'<rect width="{_fmt(_CANVAS_W)}" height="{_fmt(_CANVAS_H)}" fill="#ffffff"/>']

        xticks = _log_ticks(x0, x1) if self.xlog else _nice_ticks(x0, x1)
        yticks = _log_ticks(y0, y1) if self.ylog else _nice_ticks(y0, y1)
        for v in xticks:
            px = sx(v)
            out.append(f'<line x1="{_fmt(px)}" y1="{_fmt(py0)}" x2="{_fmt(px)}" '
                       f'y2="{_fmt(py1)}" stroke="{_GRID}" stroke-width="1"/>')
            out.append(f'<text x="{_fmt(px)}" y="{_fmt(py0 + 16)}" fill="{_FG}" '
                       f'text-anchor="middle">{_escape(_tick_label(v))}</text>')
        for v in yticks:
            py = sy(v)
            out.append(f'<line x1="{_fmt(px0)}" y1="{_fmt(py)}" x2="{_fmt(px1)}" '
                       f'y2="{_fmt(py)}" stroke="{_GRID}" stroke-width="1"/>')
            out.append(f'<text x="{_fmt(px0 - 6)}" y="{_fmt(py + 4)}" fill="{_FG}" '
                       f'text-anchor="end">{_escape(_tick_label(v))}</text>')
        out.append(f'<rect x="{_fmt(px0)}" y="{_fmt(py1)}" width="{_fmt(px1 - px0)}" '
                   f'height="{_fmt(py0 - py1)}" fill="none" stroke="{_FG}" '
                   f'stroke-width="1"/>')

        legend_y = py1 + 14.0
        for i, (kind, xs, ys, label, dashed) in enumerate(self._series):
            color = _SERIES_COLORS[i % len(_SERIES_COLORS)]
            pts = [(sx(x), sy(y)) for x, y in zip(xs, ys)
                   if math.isfinite(x) and math.isfinite(y)
                   and (not self.xlog or x > 0) and (not self.ylog or y > 0)]
            if kind == "line" and len(pts) >= 2:
                coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
                dash = ' stroke-dasharray="6,4"' if dashed else ""
                out.append(f'<polyline points="{coords}" fill="none" '
                           f'stroke="{color}" stroke-width="1.5"{dash}/>')
            else:
                for px, py in pts:
                    out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" '
                               f'fill="{color}"/>')
            if label:
                out.append(f'<circle cx="{_fmt(px1 - 150)}" cy="{_fmt(legend_y - 4)}" '
                           f'r="4" fill="{color}"/>')
                out.append(f'<text x="{_fmt(px1 - 140)}" y="{_fmt(legend_y)}" '
                           f'fill="{_FG}">{_escape(label)}</text>')
                legend_y += 16.0

        if self.title:
            out.append(f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(py1 - 10)}" '
                       f'fill="{_FG}" text-anchor="middle" font-size="14">'
                       f'{_escape(self.title)}</text>')
        if self.xlabel:
            out.append(f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(py0 + 36)}" '
                       f'fill="{_FG}" text-anchor="middle">{_escape(self.xlabel)}</text>')
        if self.ylabel:
            cx, cy = 16.0, (py0 + py1) / 2
            out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" fill="{_FG}" '
                       f'text-anchor="middle" transform="rotate(-90 {_fmt(cx)} '
                       f'{_fmt(cy)})">{_escape(self.ylabel)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"
