"""Crease-pattern data model and the local flat-foldability checks.

A pattern is a planar straight-line graph: creases meet only at shared
vertices.  Builders hand in raw labeled segments; construction splits them
at T-junctions (an endpoint of one crease lying inside another), dedups
vertices and records everything needed for the verification suite in a
ConstructionReport.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .geometry import (
    EPS_ANG,
    Point2,
    angle_at,
    point_on_segment,
    segments_cross,
)

MOUNTAIN = "mountain"
VALLEY = "valley"
BORDER = "border"
FOLDS = (MOUNTAIN, VALLEY, BORDER)


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Crease:
    start: Point2
    end: Point2
    fold: str
    label: str

    def __post_init__(self) -> None:
        if self.fold not in FOLDS:
            raise PatternError(f"unknown fold kind {self.fold!r}")
        if self.start.close_to(self.end, 1e-12):
            raise PatternError(f"zero-length crease {self.label!r}")

    def length(self) -> float:
        return self.start.distance_to(self.end)


@dataclass
class IdentityCheck:
    """One named angle identity with its evaluated residual (radians)."""

    name: str
    residual: float


# Identity terms are data so reports can be audited: each term is
# (coefficient, ("angle", vertex, p, q)) resolved against named points,
# or (coefficient, ("const", value)).
AngleTermSpec = tuple


@dataclass
class ConstructionReport:
    """What a builder did: branches taken, key scalars, named points."""

    construction: str
    tau: Optional[str] = None
    scalars: dict = field(default_factory=dict)
    branches: list = field(default_factory=list)
    merges: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    points: dict = field(default_factory=dict)
    flat_vertices: list = field(default_factory=list)
    identity_specs: list = field(default_factory=list)
    interference: dict = field(default_factory=dict)

    def add_identity(self, name: str, terms: Sequence[AngleTermSpec]) -> None:
        self.identity_specs.append((name, list(terms)))

    def to_dict(self) -> dict:
        return {
            "construction": self.construction,
            "tau": self.tau,
            "scalars": dict(self.scalars),
            "branches": list(self.branches),
            "merges": list(self.merges),
            "warnings": list(self.warnings),
            "points": {k: [p.x, p.y] for k, p in self.points.items()},
            "flat_vertices": list(self.flat_vertices),
            "interference": dict(self.interference),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionReport":
        rep = cls(construction=data.get("construction", "unknown"))
        rep.tau = data.get("tau")
        rep.scalars = dict(data.get("scalars", {}))
        rep.branches = list(data.get("branches", []))
        rep.merges = list(data.get("merges", []))
        rep.warnings = list(data.get("warnings", []))
        rep.points = {
            k: Point2(v[0], v[1]) for k, v in data.get("points", {}).items()
        }
        rep.flat_vertices = list(data.get("flat_vertices", []))
        rep.interference = dict(data.get("interference", {}))
        return rep


def angle_term_value(term: AngleTermSpec, points: dict) -> float:
    kind = term[0]
    if kind == "angle":
        _, v, p, q = term
        return angle_at(points[v], points[p], points[q])
    if kind == "const":
        return term[1]
    raise PatternError(f"unknown identity term {term!r}")


class CreasePattern:
    """Immutable-after-construction planar straight-line graph of creases."""

    def __init__(self, creases: Sequence[Crease], meta: ConstructionReport, eps: float):
        self.eps = eps
        self.meta = meta
        self.creases = list(creases)
        self.vertices = self._dedup_vertices()

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        segments: Iterable[Crease],
        meta: ConstructionReport,
        eps: float,
    ) -> "CreasePattern":
        """Normalize raw segments into a pattern.

        Duplicate segments (same endpoints) collapse into one crease; the
        collapse is recorded in meta.merges.  Every crease is then split at
        endpoints of other creases lying in its interior.
        """
        segs: list[Crease] = []
        for c in segments:
            dup = None
            for o in segs:
                same = (
                    c.start.close_to(o.start, eps) and c.end.close_to(o.end, eps)
                ) or (c.start.close_to(o.end, eps) and c.end.close_to(o.start, eps))
                if same:
                    dup = o
                    break
            if dup is not None:
                if dup.fold != c.fold:
                    raise PatternError(
                        f"creases {dup.label!r} and {c.label!r} coincide with "
                        f"conflicting folds"
                    )
                meta.merges.append(f"{c.label} merged into {dup.label}")
                continue
            segs.append(c)

        endpoints: list[Point2] = []
        for c in segs:
            for p in (c.start, c.end):
                if not any(p.close_to(q, eps) for q in endpoints):
                    endpoints.append(p)

        out: list[Crease] = []
        for c in segs:
            cuts = [
                p
                for p in endpoints
                if not p.close_to(c.start, eps)
                and not p.close_to(c.end, eps)
                and point_on_segment(p, c.start, c.end, eps)
            ]
            d = (c.end - c.start).unit()
            cuts.sort(key=lambda p: (p - c.start).dot(d))
            prev = c.start
            for p in cuts + [c.end]:
                if not prev.close_to(p, eps):
                    out.append(Crease(prev, p, c.fold, c.label))
                prev = p
        return cls(out, meta, eps)

    def _dedup_vertices(self) -> list[Point2]:
        verts: list[Point2] = []
        for c in self.creases:
            for p in (c.start, c.end):
                if not any(p.close_to(q, self.eps) for q in verts):
                    verts.append(p)
        return verts

    # -- queries -----------------------------------------------------------

    def find_vertex(self, p: Point2) -> Point2:
        for q in self.vertices:
            if p.close_to(q, max(self.eps, 1e-7)):
                return q
        raise KeyError(f"no pattern vertex near ({p.x:.6g}, {p.y:.6g})")

    def creases_at(self, vertex: Point2) -> list[tuple[Crease, Point2]]:
        """Creases incident to ``vertex`` with their outgoing unit directions."""
        v = self.find_vertex(vertex)
        out = []
        for c in self.creases:
            if c.start.close_to(v, self.eps):
                out.append((c, (c.end - v).unit()))
            elif c.end.close_to(v, self.eps):
                out.append((c, (c.start - v).unit()))
        return out

    def degree(self, vertex: Point2) -> int:
        return len(self.creases_at(vertex))

    def sector_angles(self, vertex: Point2) -> list[float]:
        """Consecutive sector angles around a vertex, sorted by azimuth.

        Creases whose directions coincide within EPS_ANG are merged (the
        duplicate is dropped) so degenerate branches do not produce zero
        sectors.
        """
        dirs = sorted(d.azimuth() for _, d in self.creases_at(vertex))
        merged: list[float] = []
        for a in dirs:
            if merged and a - merged[-1] < EPS_ANG:
                continue
            merged.append(a)
        if len(merged) >= 2 and (merged[0] + 2.0 * math.pi) - merged[-1] < EPS_ANG:
            merged.pop()
        if len(merged) < 2:
            raise PatternError("vertex has fewer than two distinct directions")
        sectors = [b - a for a, b in zip(merged, merged[1:])]
        sectors.append(merged[0] + 2.0 * math.pi - merged[-1])
        return sectors


def kawasaki_residual(cp: CreasePattern, vertex: Point2) -> float:
    """|alternating sum of consecutive sector angles| at an interior vertex.

    Zero (within tolerance) means the vertex is locally flat-foldable.
    Odd-degree vertices simply yield a large residual; border vertices are
    the caller's business to exempt.
    """
    sectors = cp.sector_angles(vertex)
    alt = 0.0
    for i, s in enumerate(sectors):
        alt += s if i % 2 == 0 else -s
    return abs(alt)


def assert_identities(cp: CreasePattern) -> list[IdentityCheck]:
    """Evaluate every registered angle identity of the pattern's construction."""
    out = []
    pts = cp.meta.points
    for name, terms in cp.meta.identity_specs:
        total = 0.0
        for coef, term in terms:
            total += coef * angle_term_value(term, pts)
        out.append(IdentityCheck(name, abs(total)))
    return out


def check_planarity(cp: CreasePattern) -> list[tuple[str, str]]:
    """Pairs of creases whose interiors cross; empty for a legal pattern."""
    bad = []
    cs = cp.creases
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            a, b = cs[i], cs[j]
            if segments_cross(a.start, a.end, b.start, b.end, cp.eps):
                bad.append((a.label, b.label))
    return bad


def flat_vertex_residuals(cp: CreasePattern) -> dict[str, float]:
    """Kawasaki residual at every vertex the construction declared flat."""
    out = {}
    for name in cp.meta.flat_vertices:
        out[name] = kawasaki_residual(cp, cp.meta.points[name])
    return out
