"""Minimal self-contained SVG log-log charts (axes, polyline, labels).

No external renderer; output is a static display of curve data.
"""

from __future__ import annotations

import math

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 50


def _ticks(lo: float, hi: float) -> list[float]:
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    return [10.0 ** k for k in range(first, last + 1) if lo <= 10.0 ** k <= hi]


def loglog_svg(points: list[tuple[float, float]], title: str,
               xlabel: str, ylabel: str) -> str:
    """Render (x, y) pairs as a log-log polyline. Non-positive values are
    dropped (undefined on log axes)."""
    pts = [(x, y) for x, y in points if x > 0 and y > 0]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="24" text-anchor="middle" font-size="16">{title}</text>',
    ]
    x0, x1 = _ML, _W - _MR
    y0, y1 = _H - _MB, _MT
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>')
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>')
    parts.append(f'<text x="{(x0 + x1) / 2}" y="{_H - 12}" text-anchor="middle" '
                 f'font-size="13">{xlabel}</text>')
    parts.append(f'<text x="16" y="{(y0 + y1) / 2}" text-anchor="middle" font-size="13" '
                 f'transform="rotate(-90 16 {(y0 + y1) / 2})">{ylabel}</text>')
    if pts:
        lx = [math.log10(x) for x, _ in pts]
        ly = [math.log10(y) for _, y in pts]
        lx_min, lx_max = min(lx), max(lx)
        ly_min, ly_max = min(ly), max(ly)
        if lx_max == lx_min:
            lx_max += 1.0
        if ly_max == ly_min:
            ly_max += 1.0

        def sx(v: float) -> float:
            return x0 + (v - lx_min) / (lx_max - lx_min) * (x1 - x0)

        def sy(v: float) -> float:
            return y0 - (v - ly_min) / (ly_max - ly_min) * (y0 - y1)

        for t in _ticks(10 ** lx_min, 10 ** lx_max):
            px = sx(math.log10(t))
            parts.append(f'<line x1="{px:.1f}" y1="{y0}" x2="{px:.1f}" y2="{y0 + 5}" '
                         f'stroke="black"/>')
            parts.append(f'<text x="{px:.1f}" y="{y0 + 20}" text-anchor="middle" '
                         f'font-size="11">1e{int(math.log10(t))}</text>')
        for t in _ticks(10 ** ly_min, 10 ** ly_max):
            py = sy(math.log10(t))
            parts.append(f'<line x1="{x0 - 5}" y1="{py:.1f}" x2="{x0}" y2="{py:.1f}" '
                         f'stroke="black"/>')
            parts.append(f'<text x="{x0 - 8}" y="{py + 4:.1f}" text-anchor="end" '
                         f'font-size="11">1e{int(math.log10(t))}</text>')
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(lx, ly))
        parts.append(f'<polyline points="{coords}" fill="none" stroke="#1f6fb2" '
                     f'stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
