"""SVG chevron diagrams for laid-out variants."""

from __future__ import annotations

import colorsys
import logging
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .layout import LayoutGrid

logger = logging.getLogger(__name__)

# degrees on the colour wheel; types get these in name order, cycling
BASE_HUES = (210, 120, 30, 0, 270, 180, 60, 320)
MAX_SHADES = 12
LIGHTNESS_RANGE = (0.30, 0.72)
SATURATION = 0.55


def _hex(h: float, lightness: float) -> str:
    r, g, b = colorsys.hls_to_rgb(h / 360.0, lightness, SATURATION)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


@dataclass(frozen=True)
class Palette:
    base: dict      # type -> "#rrggbb"
    shade: dict     # object id -> "#rrggbb"
    warnings: tuple = ()


def build_palette(grid: LayoutGrid) -> Palette:
    types = sorted({t for _, t in grid.lanes})
    hue = {t: BASE_HUES[i % len(BASE_HUES)] for i, t in enumerate(types)}
    mid = sum(LIGHTNESS_RANGE) / 2
    base = {t: _hex(hue[t], mid) for t in types}
    shade = {}
    warnings = []
    for t in types:
        objs = [o for o, ot in grid.lanes if ot == t]
        n = min(len(objs), MAX_SHADES)
        if len(objs) > MAX_SHADES:
            warnings.append(f"type {t!r} has {len(objs)} objects; shades repeat after {MAX_SHADES}")
        lo, hi = LIGHTNESS_RANGE
        for i, o in enumerate(objs):
            k = i % MAX_SHADES
            lightness = mid if n == 1 else lo + (hi - lo) * k / (n - 1)
            shade[o] = _hex(hue[t], lightness)
    for w in warnings:
        logger.warning(w)
    return Palette(base, shade, tuple(warnings))


@dataclass(frozen=True)
class Geometry:
    cell_width: int = 96
    cell_height: int = 28
    arrow_depth: int = 10
    lane_gap: int = 4
    margin: int = 8
    font_size: int = 11


def _chevron(x0: float, x1: float, y: float, g: Geometry) -> str:
    d, h = g.arrow_depth, g.cell_height
    pts = [(x0, y), (x1 - d, y), (x1, y + h / 2), (x1 - d, y + h), (x0, y + h), (x0 + d, y + h / 2)]
    return " ".join(f"{px:g},{py:g}" for px, py in pts)


def _fit(label: str, span_px: float, g: Geometry) -> str:
    limit = max(1, int((span_px - 2 * g.arrow_depth) / (g.font_size * 0.6)))
    return label if len(label) <= limit else label[: max(1, limit - 1)] + "…"


def render_svg(grid: LayoutGrid, labels: dict, palette: Palette, geometry: Geometry = Geometry()) -> bytes:
    """One chevron per (event, lane); shared events line up across their lanes."""
    g = geometry
    width = 2 * g.margin + max(grid.width, 1) * g.cell_width
    height = 2 * g.margin + len(grid.lanes) * (g.cell_height + g.lane_gap) - (g.lane_gap if grid.lanes else 0)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="{g.font_size}">',
    ]
    for w in palette.warnings:
        out.append(f"<!-- warning: {escape(w).replace('--', '- -')} -->")
    for lane, (oid, otype) in enumerate(grid.lanes):
        y = g.margin + lane * (g.cell_height + g.lane_gap)
        fill = palette.shade[oid]
        out.append(f'<g class="lane" data-object={quoteattr(oid)} data-type={quoteattr(otype)}>')
        for e in grid.lane_events(lane):
            xs, xe = grid.cell[e]
            x0 = g.margin + xs * g.cell_width
            x1 = g.margin + (xe + 1) * g.cell_width
            out.append(f'<polygon data-event={quoteattr(e)} points="{_chevron(x0, x1, y, g)}" '
                       f'fill="{fill}" stroke="#ffffff" stroke-width="1"/>')
            tx = (x0 + x1) / 2 + g.arrow_depth / 2
            ty = y + g.cell_height / 2
            out.append(f'<text x="{tx:g}" y="{ty:g}" text-anchor="middle" dominant-baseline="central" '
                       f'fill="#ffffff">{escape(_fit(labels.get(e, e), x1 - x0, g))}</text>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
