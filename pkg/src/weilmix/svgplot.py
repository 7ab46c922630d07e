"""Static SVG 1.1 rendering of a bound profile: step count on the abscissa,
total-variation bounds on the ordinate, one polyline per bound."""

from __future__ import annotations

from typing import Sequence

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 40, 50


def _x(r: float, r_lo: float, r_hi: float) -> float:
    span = max(r_hi - r_lo, 1)
    return MARGIN_L + (r - r_lo) / span * (WIDTH - MARGIN_L - MARGIN_R)


def _y(v: float) -> float:
    v = min(1.0, max(0.0, v))
    return MARGIN_T + (1.0 - v) * (HEIGHT - MARGIN_T - MARGIN_B)


def _polyline(points: Sequence[tuple[float, float]], color: str) -> str:
    if not points:
        return ""
    coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'
    )


def render_profile_svg(rows: Sequence[dict], title: str) -> str:
    """rows: dicts with keys r, upper_tv, lower_tv (floats)."""
    rs = [row["r"] for row in rows]
    r_lo, r_hi = (min(rs), max(rs)) if rs else (0, 1)
    upper_pts = [(_x(row["r"], r_lo, r_hi), _y(row["upper_tv"])) for row in rows]
    lower_pts = [(_x(row["r"], r_lo, r_hi), _y(row["lower_tv"])) for row in rows]

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH/2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    # axes
    x0, y0 = MARGIN_L, _y(0.0)
    x1, y1 = WIDTH - MARGIN_R, _y(1.0)
    parts.append(
        f'<line x1="{x0}" y1="{y0:.1f}" x2="{x1}" y2="{y0:.1f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{x0}" y1="{y0:.1f}" x2="{x0}" y2="{y1:.1f}" stroke="black"/>'
    )
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        ty = _y(tick)
        parts.append(
            f'<line x1="{x0-4}" y1="{ty:.1f}" x2="{x0}" y2="{ty:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0-8}" y="{ty+4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:g}</text>'
        )
    n_ticks = min(len(rs), 11) if rs else 0
    seen = set()
    for i in range(n_ticks):
        r = rs[round(i * (len(rs) - 1) / max(n_ticks - 1, 1))]
        if r in seen:
            continue
        seen.add(r)
        tx = _x(r, r_lo, r_hi)
        parts.append(
            f'<line x1="{tx:.1f}" y1="{y0:.1f}" x2="{tx:.1f}" y2="{y0+4:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{tx:.1f}" y="{y0+18:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{r}</text>'
        )
    parts.append(
        f'<text x="{(x0+x1)/2:.0f}" y="{HEIGHT-12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">steps r</text>'
    )
    parts.append(_polyline(upper_pts, "#c0392b"))
    parts.append(_polyline(lower_pts, "#2471a3"))
    legend_y = MARGIN_T + 8
    parts.append(
        f'<line x1="{x1-150}" y1="{legend_y}" x2="{x1-120}" y2="{legend_y}" '
        f'stroke="#c0392b" stroke-width="2"/>'
        f'<text x="{x1-114}" y="{legend_y+4}" font-family="sans-serif" font-size="11">upper</text>'
    )
    parts.append(
        f'<line x1="{x1-150}" y1="{legend_y+16}" x2="{x1-120}" y2="{legend_y+16}" '
        f'stroke="#2471a3" stroke-width="2"/>'
        f'<text x="{x1-114}" y="{legend_y+20}" font-family="sans-serif" font-size="11">lower</text>'
    )
    parts.append("</svg>")
    return "\n".join(p for p in parts if p)
