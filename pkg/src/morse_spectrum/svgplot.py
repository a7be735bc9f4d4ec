"""Minimal deterministic SVG line plots (no plotting dependency).

Fixed 800x500 viewport, a horizontal rule on the zero axis, one polyline
per curve, and optional event markers on the axis.  Values with magnitude
above 50 are clamped so steep spectral branches stay readable.
"""

from __future__ import annotations

WIDTH, HEIGHT = 800, 500
MARGIN = 50.0
CLIP = 50.0

_PALETTE = {
    "dirichlet": "#1f77b4",
    "twisted": "#d62728",
}


def _fmt(x: float) -> str:
    return format(x, ".6g")


def _color(kind: str, k: int) -> str:
    base = _PALETTE.get(kind, "#2ca02c")
    return base


def curves_svg(series: dict, events: list | None = None, title: str = "") -> str:
    """Render ``series`` {(kind, k): [(t, value), ...]} to an SVG string."""
    pts = [p for rows in series.values() for p in rows]
    if not pts:
        raise ValueError("nothing to plot")
    ts = [p[0] for p in pts]
    vs = [max(-CLIP, min(CLIP, p[1])) for p in pts]
    t0, t1 = min(ts), max(ts)
    v0, v1 = min(vs + [0.0]), max(vs + [0.0])
    if t1 <= t0:
        t1 = t0 + 1.0
    if v1 <= v0:
        v1 = v0 + 1.0
    pad = 0.05 * (v1 - v0)
    v0, v1 = v0 - pad, v1 + pad

    def sx(t):
        return MARGIN + (t - t0) / (t1 - t0) * (WIDTH - 2 * MARGIN)

    def sy(v):
        v = max(-CLIP, min(CLIP, v))
        return HEIGHT - MARGIN - (v - v0) / (v1 - v0) * (HEIGHT - 2 * MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    # frame and zero axis
    out.append(
        f'<rect x="{_fmt(MARGIN)}" y="{_fmt(MARGIN)}" width="{_fmt(WIDTH - 2 * MARGIN)}" '
        f'height="{_fmt(HEIGHT - 2 * MARGIN)}" fill="none" stroke="#999"/>'
    )
    if v0 < 0.0 < v1:
        y = _fmt(sy(0.0))
        out.append(
            f'<line x1="{_fmt(MARGIN)}" y1="{y}" x2="{_fmt(WIDTH - MARGIN)}" y2="{y}" '
            f'stroke="#333" stroke-dasharray="4 3"/>'
        )
    for (kind, k) in sorted(series):
        rows = series[(kind, k)]
        coords = " ".join(f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in rows)
        out.append(
            f'<polyline fill="none" stroke="{_color(kind, k)}" stroke-width="1.2" '
            f'opacity="0.85" points="{coords}"/>'
        )
    for ev in events or []:
        t_star, kind = ev[0], ev[1]
        fill = _PALETTE.get(kind, "#2ca02c")
        out.append(
            f'<circle cx="{_fmt(sx(t_star))}" cy="{_fmt(sy(0.0))}" r="4" '
            f'fill="{fill}" stroke="black" stroke-width="0.5"/>'
        )
    out.append(
        f'<text x="{_fmt(WIDTH - MARGIN)}" y="{HEIGHT - 14}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">t</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
