"""Deterministic SVG 1.1 rendering of crease patterns.

One path per crease; mountains are solid red, valleys dashed blue,
borders heavier black.  The y axis is flipped for screen coordinates and
labels become hover titles.
"""

from __future__ import annotations

from .cp import BORDER, MOUNTAIN, VALLEY, CreasePattern
from .fold_io import ExportError, ExportOptions

STYLES = {
    MOUNTAIN: ('stroke="#d62728" stroke-width="1.5"', "mountain"),
    VALLEY: ('stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="6,3"', "valley"),
    BORDER: ('stroke="#000000" stroke-width="2.5"', "border"),
}


def export_svg(cp: CreasePattern, opts: ExportOptions = ExportOptions()) -> bytes:
    from .cp import check_planarity

    if not cp.creases:
        raise ExportError("refusing to export an empty pattern")
    if check_planarity(cp):
        raise ExportError("pattern has illegal crossings")

    scale = opts.units_per_ab
    half = cp.meta.scalars.get("sheet_half")
    cx = cp.meta.scalars.get("sheet_center_x", 0.0)
    cy = cp.meta.scalars.get("sheet_center_y", 0.0)
    if half is None:
        xs = [p for c in cp.creases for p in (c.start.x, c.end.x)]
        ys = [p for c in cp.creases for p in (c.start.y, c.end.y)]
        cx, cy = (min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0
        half = max(max(xs) - min(xs), max(ys) - min(ys)) / 2.0 or 1.0

    def fx(x: float) -> str:
        return f"{(x - cx + half) * scale:.{opts.precision}g}"

    def fy(y: float) -> str:
        # Flip y for screen coordinates.
        return f"{(half - (y - cy)) * scale:.{opts.precision}g}"

    side = f"{2.0 * half * scale:.{opts.precision}g}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {side} {side}">',
        f'<rect x="0" y="0" width="{side}" height="{side}" fill="#ffffff"/>',
    ]
    for c in cp.creases:
        style, cls = STYLES[c.fold]
        lines.append(
            f'<path class="{cls}" {style} fill="none" '
            f'd="M {fx(c.start.x)} {fy(c.start.y)} L {fx(c.end.x)} {fy(c.end.y)}">'
            f"<title>{c.label}</title></path>"
        )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
