"""Figure emitters: deterministic SVG for curves and allocations, and a
matplotlib chart for the worst-case report.

The SVG writers emit plain SVG 1.1 with fixed formatting so output is
byte-for-byte reproducible for identical inputs; region colors derive from a
digest of the region id, not from hash randomization.
"""

from __future__ import annotations

import colorsys
import hashlib
from typing import Iterable, Sequence

from .allocator import Region
from .curve import CurveOrder

_CELL = 16
_MARGIN = 8


def _px(units: float) -> str:
    text = f"{units:.1f}"
    return text[:-2] if text.endswith(".0") else text


def region_color(region_id: str) -> str:
    """Stable, id-derived fill color."""
    digest = hashlib.md5(region_id.encode("utf-8")).digest()
    hue = digest[0] / 255.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.62, 0.65)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _svg_header(width: float, height: float) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_px(width)}" height="{_px(height)}" '
        f'viewBox="0 0 {_px(width)} {_px(height)}">\n'
    )


def _grid_lines(side: int) -> list[str]:
    span = side * _CELL
    lines = []
    for i in range(side + 1):
        offset = _px(_MARGIN + i * _CELL)
        lines.append(
            f'<line x1="{offset}" y1="{_px(_MARGIN)}" x2="{offset}" '
            f'y2="{_px(_MARGIN + span)}" stroke="#cccccc" stroke-width="1"/>'
        )
        lines.append(
            f'<line x1="{_px(_MARGIN)}" y1="{offset}" x2="{_px(_MARGIN + span)}" '
            f'y2="{offset}" stroke="#cccccc" stroke-width="1"/>'
        )
    return lines


def curve_svg(order: CurveOrder) -> str:
    """The curve as a polyline over its grid, upper-left start marked."""
    side = order.size
    span = side * _CELL
    width = height = 2 * _MARGIN + span

    def center(x: int, y: int) -> tuple[float, float]:
        return (
            _MARGIN + x * _CELL + _CELL / 2,
            _MARGIN + (side - 1 - y) * _CELL + _CELL / 2,
        )

    points = " ".join(
        f"{_px(cx)},{_px(cy)}"
        for cx, cy in (center(int(x), int(y)) for x, y in zip(order.xs, order.ys))
    )
    start = center(int(order.xs[0]), int(order.ys[0]))
    parts = [_svg_header(width, height)]
    parts.extend(line + "\n" for line in _grid_lines(side))
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#1d3557" stroke-width="2"/>\n'
    )
    parts.append(
        f'<circle cx="{_px(start[0])}" cy="{_px(start[1])}" r="3" fill="#e63946"/>\n'
    )
    parts.append("</svg>\n")
    return "".join(parts)


def allocation_svg(regions: Sequence[Region], side: int) -> str:
    """Allocated regions as colored cells plus an id legend."""
    span = side * _CELL
    legend_width = 140
    width = 2 * _MARGIN + span + legend_width
    height = max(2 * _MARGIN + span, 2 * _MARGIN + 18 * len(regions))
    parts = [_svg_header(width, height)]
    for region in regions:
        fill = region_color(region.id)
        for x, y in sorted(region.shape):
            px = _MARGIN + x * _CELL
            py = _MARGIN + (side - 1 - y) * _CELL
            parts.append(
                f'<rect x="{_px(px)}" y="{_px(py)}" width="{_px(_CELL)}" '
                f'height="{_px(_CELL)}" fill="{fill}" stroke="#ffffff" '
                'stroke-width="0.5"/>\n'
            )
    parts.extend(line + "\n" for line in _grid_lines(side))
    legend_x = 2 * _MARGIN + span
    for i, region in enumerate(regions):
        y0 = _MARGIN + i * 18
        parts.append(
            f'<rect x="{_px(legend_x)}" y="{_px(y0)}" width="12" height="12" '
            f'fill="{region_color(region.id)}"/>\n'
        )
        parts.append(
            f'<text x="{_px(legend_x + 16)}" y="{_px(y0 + 10)}" '
            f'font-family="monospace" font-size="11">{region.id} '
            f'phi={region.phi:.4f}</text>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)


def worst_plot(
    ns: Iterable[int],
    phis: Iterable[float],
    blowups: Iterable[float | None],
    mode: str,
    upper: float,
    path: str,
) -> None:
    """Chart of per-size worst phi and blow-up bound, saved to a file."""
    from matplotlib.figure import Figure

    ns = list(ns)
    phis = list(phis)
    blowups = list(blowups)
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot(111)
    ax.plot(ns, phis, marker="o", markersize=3, linewidth=1.2,
            color="#1d3557", label="worst phi")
    blow_ns = [n for n, b in zip(ns, blowups) if b is not None]
    blow_vs = [b for b in blowups if b is not None]
    if blow_vs:
        ax.plot(blow_ns, blow_vs, marker="s", markersize=3, linewidth=1.2,
                color="#e63946", label="blow-up bound")
    ax.axhline(upper, color="#457b9d", linestyle="--", linewidth=1,
               label=f"upper bound {upper:.4f}")
    ax.set_xlabel("n")
    ax.set_ylabel("phi")
    ax.set_title(f"worst {mode} windows")
    ax.legend(loc="best", fontsize=9)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
