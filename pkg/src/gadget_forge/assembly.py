"""Shared pattern assembly: frame creases, ray clipping, border emission."""

from __future__ import annotations

from .cp import MOUNTAIN, VALLEY, ConstructionReport, Crease, CreasePattern
from .frame import PleatFrame, frame_points
from .geometry import Point2, Ray2
from .sheet import border_creases, fit_sheet

DEFAULT_SHEET_SCALE = 6.0


class Builder:
    """Accumulates labeled creases for one construction, then clips and packs."""

    def __init__(self, frame: PleatFrame, meta: ConstructionReport, sheet_scale: float = DEFAULT_SHEET_SCALE):
        self.frame = frame
        self.meta = meta
        self.sheet_scale = sheet_scale
        self._rays: list[tuple[Ray2, str, str]] = []
        self._segments: list[tuple[Point2, Point2, str, str]] = []
        self.meta.points.update(frame_points(frame))

    def add_points(self, **named: Point2) -> None:
        self.meta.points.update(named)

    def ray(self, ray: Ray2, fold: str, label: str) -> None:
        self._rays.append((ray, fold, label))

    def segment(self, a: Point2, b: Point2, fold: str, label: str) -> None:
        self._segments.append((a, b, fold, label))

    def base_net_creases(self, pleats: bool = True) -> None:
        """Net rays j/k plus the prescribed pleat ell and the ridge creases."""
        f = self.frame
        for side in ("L", "R"):
            self.ray(f.j(side), MOUNTAIN, f"j_{side}")
            self.ray(f.k(side), VALLEY, f"k_{side}")
            if pleats:
                self.ray(f.ell(side), VALLEY, f"ell_{side}")
                self.segment(f.a, f.b(side), VALLEY, f"AB_{side}")

    def finish(self) -> CreasePattern:
        ab = self.frame.spec.ab_len
        anchor_pts = [self.frame.a, self.frame.c]
        for a, b, _, _ in self._segments:
            anchor_pts += [a, b]
        for r, _, _ in self._rays:
            anchor_pts.append(r.origin)
        anchor_pts += list(self.meta.points.values())
        sheet, grown = fit_sheet(self.frame.a, ab, self.sheet_scale, anchor_pts)
        if grown:
            self.meta.warnings.append(
                f"sheet grown beyond {self.sheet_scale} ridge lengths to fit the frame"
            )
        self.meta.scalars["sheet_half"] = sheet.half
        self.meta.scalars["sheet_center_x"] = sheet.center.x
        self.meta.scalars["sheet_center_y"] = sheet.center.y

        eps = 1e-9 * ab
        creases: list[Crease] = []
        exits: list[Point2] = []
        for ray, fold, label in self._rays:
            end = sheet.clip_ray(ray)
            exits.append(end)
            creases.append(Crease(ray.origin, end, fold, label))
        for a, b, fold, label in self._segments:
            creases.append(Crease(a, b, fold, label))
        creases.extend(border_creases(sheet, exits, eps))
        return CreasePattern.build(creases, self.meta, eps)
