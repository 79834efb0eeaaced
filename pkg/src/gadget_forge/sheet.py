"""Finite paper sheet: ray truncation and border creases.

Constructions draw some creases as rays (pleats running to the paper
edge).  For file output they are clipped to a square sheet centered on
the apex; the sheet grows automatically when a construction point would
fall outside the default square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .cp import BORDER, Crease
from .geometry import Point2, Ray2


@dataclass(frozen=True)
class Sheet:
    center: Point2
    half: float

    @property
    def x_min(self) -> float:
        return self.center.x - self.half

    @property
    def x_max(self) -> float:
        return self.center.x + self.half

    @property
    def y_min(self) -> float:
        return self.center.y - self.half

    @property
    def y_max(self) -> float:
        return self.center.y + self.half

    def contains(self, p: Point2, margin: float = 0.0) -> bool:
        return (
            self.x_min - margin <= p.x <= self.x_max + margin
            and self.y_min - margin <= p.y <= self.y_max + margin
        )

    def on_border(self, p: Point2, eps: float) -> bool:
        if not self.contains(p, eps):
            return False
        return (
            abs(p.x - self.x_min) <= eps
            or abs(p.x - self.x_max) <= eps
            or abs(p.y - self.y_min) <= eps
            or abs(p.y - self.y_max) <= eps
        )

    def clip_ray(self, ray: Ray2) -> Point2:
        """Exit point of a ray that starts inside the sheet."""
        best = math.inf
        ox, oy = ray.origin.x, ray.origin.y
        dx, dy = ray.direction.x, ray.direction.y
        for bound, o, d in (
            (self.x_min, ox, dx),
            (self.x_max, ox, dx),
            (self.y_min, oy, dy),
            (self.y_max, oy, dy),
        ):
            if abs(d) < 1e-15:
                continue
            t = (bound - o) / d
            if 1e-12 < t < best:
                q = ray.at(t)
                if self.contains(q, 1e-9 * self.half):
                    best = t
        if not math.isfinite(best):
            raise ValueError("ray does not leave the sheet (origin outside?)")
        return ray.at(best)


def fit_sheet(center: Point2, ab_len: float, scale: float, points: Iterable[Point2]) -> tuple[Sheet, bool]:
    """Sheet of side ``scale * ab_len`` centered at ``center``, grown to
    cover every construction point with 10% headroom.  Returns the sheet
    and whether it had to grow."""
    half = 0.5 * scale * ab_len
    need = 0.0
    for p in points:
        need = max(need, abs(p.x - center.x), abs(p.y - center.y))
    grown = need * 1.1 > half
    if grown:
        half = need * 1.1
    return Sheet(center, half), grown


def border_creases(sheet: Sheet, exit_points: Iterable[Point2], eps: float) -> list[Crease]:
    """The four sheet edges, split at every crease exit point on them."""
    corners = [
        Point2(sheet.x_min, sheet.y_min),
        Point2(sheet.x_max, sheet.y_min),
        Point2(sheet.x_max, sheet.y_max),
        Point2(sheet.x_min, sheet.y_max),
    ]
    exits = list(exit_points)
    out: list[Crease] = []
    for i in range(4):
        a, b = corners[i], corners[(i + 1) % 4]
        d = (b - a).unit()
        cuts = []
        for p in exits:
            if p.close_to(a, eps) or p.close_to(b, eps):
                continue
            t = (p - a).dot(d)
            if 0.0 < t < a.distance_to(b) and abs((p - a).cross(d)) <= eps:
                cuts.append((t, p))
        cuts.sort(key=lambda tp: tp[0])
        prev = a
        for _, p in cuts:
            out.append(Crease(prev, p, BORDER, "edge"))
            prev = p
        out.append(Crease(prev, b, BORDER, "edge"))
    return out
