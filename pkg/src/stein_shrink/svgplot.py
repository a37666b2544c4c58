"""Minimal SVG scatter/line rendering for documentation-grade figures.

Fixed 800x600 viewBox, axis lines, tick labels at min/mid/max.  Not intended
to be bit-stable across versions.
"""

from __future__ import annotations

__all__ = ["render_scatter"]

_W, _H = 800, 600
_ML, _MR, _MT, _MB = 70, 20, 40, 50


def _ticks(lo, hi):
    mid = (lo + hi) / 2
    return [lo, mid, hi]


def _fmt(v):
    return f"{v:.4g}"


def render_scatter(xs, ys, title="", xlabel="", ylabel="", mode="points") -> str:
    """Return an SVG document plotting (xs, ys) as points or a polyline."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equal-length nonempty coordinate lists")
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    if xhi == xlo:
        xlo, xhi = xlo - 1.0, xhi + 1.0
    if yhi == ylo:
        ylo, yhi = ylo - 1.0, yhi + 1.0

    def sx(x):
        return _ML + (x - xlo) / (xhi - xlo) * (_W - _ML - _MR)

    def sy(y):
        return _H - _MB - (y - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_W / 2}" y="25" text-anchor="middle" font-size="16">{title}</text>'
        )
    if xlabel:
        parts.append(
            f'<text x="{_W / 2}" y="{_H - 10}" text-anchor="middle" font-size="13">{xlabel}</text>'
        )
    if ylabel:
        parts.append(
            f'<text x="15" y="{_H / 2}" text-anchor="middle" font-size="13" '
            f'transform="rotate(-90 15 {_H / 2})">{ylabel}</text>'
        )
    for t in _ticks(xlo, xhi):
        parts.append(
            f'<line x1="{sx(t):.2f}" y1="{_H - _MB}" x2="{sx(t):.2f}" y2="{_H - _MB + 6}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{sx(t):.2f}" y="{_H - _MB + 20}" text-anchor="middle" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    for t in _ticks(ylo, yhi):
        parts.append(
            f'<line x1="{_ML - 6}" y1="{sy(t):.2f}" x2="{_ML}" y2="{sy(t):.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_ML - 10}" y="{sy(t):.2f}" text-anchor="end" '
            f'font-size="12">{_fmt(t)}</text>'
        )
    if mode == "line":
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>'
        )
    else:
        for x, y in zip(xs, ys):
            parts.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2" fill="steelblue"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
