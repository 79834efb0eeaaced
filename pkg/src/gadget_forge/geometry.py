"""Planar constructive geometry shared by all gadget builders.

Everything works in ordinary double precision with a single pair of
tolerances: angles compare within EPS_ANG radians and lengths within
EPS_LEN times the ridge length (callers pass absolute tolerances already
scaled).  Near-parallel intersections report ``None`` instead of a far
away point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

# Absolute tolerance for angle comparisons (radians).
EPS_ANG = 1e-9
# Relative tolerance for length comparisons (units of the ridge length).
EPS_LEN = 1e-9
# Cross products below this threshold count as parallel.
PARALLEL_EPS = 1e-12

TWO_PI = 2.0 * math.pi


class GeometryError(ValueError):
    """Degenerate input to a constructive operation."""


@dataclass(frozen=True)
class Point2:
    """Immutable 2D point (doubles as a vector)."""

    x: float
    y: float

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self, eps: float = 1e-15) -> "Point2":
        n = self.norm()
        if n < eps:
            raise GeometryError("cannot normalize near-zero vector")
        return Point2(self.x / n, self.y / n)

    def perp(self) -> "Point2":
        """Counterclockwise perpendicular."""
        return Point2(-self.y, self.x)

    def azimuth(self) -> float:
        return math.atan2(self.y, self.x)

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def close_to(self, other: "Point2", eps: float) -> bool:
        return self.distance_to(other) <= eps


@dataclass(frozen=True)
class Ray2:
    """Ray with unit direction; origin included."""

    origin: Point2
    direction: Point2

    def __post_init__(self) -> None:
        n = self.direction.norm()
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "direction", self.direction.unit())

    @classmethod
    def from_azimuth(cls, origin: Point2, azimuth: float) -> "Ray2":
        return cls(origin, Point2(math.cos(azimuth), math.sin(azimuth)))

    @classmethod
    def through(cls, origin: Point2, target: Point2) -> "Ray2":
        return cls(origin, (target - origin).unit())

    def at(self, t: float) -> Point2:
        return self.origin + self.direction * t

    def param_of(self, p: Point2) -> float:
        """Signed parameter of the projection of ``p`` onto the ray's line."""
        return (p - self.origin).dot(self.direction)


AngleRad = float


def unit(azimuth: float) -> Point2:
    return Point2(math.cos(azimuth), math.sin(azimuth))


def normalize_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def line_intersection(
    p1: Point2, d1: Point2, p2: Point2, d2: Point2
) -> Optional[Point2]:
    """Intersection of two lines given as point + direction, or None if parallel."""
    denom = d1.cross(d2)
    if abs(denom) < PARALLEL_EPS:
        return None
    t = (p2 - p1).cross(d2) / denom
    return p1 + d1 * t


def line_intersection_params(
    p1: Point2, d1: Point2, p2: Point2, d2: Point2
) -> Optional[tuple[float, float]]:
    """Line-line intersection as the pair of signed parameters, or None."""
    denom = d1.cross(d2)
    if abs(denom) < PARALLEL_EPS:
        return None
    diff = p2 - p1
    t = diff.cross(d2) / denom
    u = diff.cross(d1) / denom
    return t, u


def intersect_rays(a: Ray2, b: Ray2, eps: float = 1e-9) -> Optional[Point2]:
    """Intersection point of two rays.

    Returns None when the rays are parallel or when the supporting lines
    meet behind either origin (slightly negative parameters within ``eps``
    still count as hits, so shared origins work).
    """
    params = line_intersection_params(a.origin, a.direction, b.origin, b.direction)
    if params is None:
        return None
    t, u = params
    if t < -eps or u < -eps:
        return None
    return a.at(t)


def intersect_ray_line(ray: Ray2, p: Point2, d: Point2, eps: float = 1e-9) -> Optional[Point2]:
    """Intersection of a ray with a full line; None if parallel or behind the ray."""
    params = line_intersection_params(ray.origin, ray.direction, p, d)
    if params is None:
        return None
    t, _ = params
    if t < -eps:
        return None
    return ray.at(t)


def intersect_ray_segment(
    ray: Ray2, a: Point2, b: Point2, eps: float = 1e-9
) -> Optional[Point2]:
    """Intersection of a ray with a closed segment, or None."""
    d = b - a
    params = line_intersection_params(ray.origin, ray.direction, a, d)
    if params is None:
        return None
    t, u = params
    if t < -eps or u < -eps or u > 1.0 + eps:
        return None
    return ray.at(t)


def rotate_about(p: Point2, center: Point2, angle: AngleRad) -> Point2:
    """Rigid rotation of ``p`` about ``center``; counterclockwise positive."""
    c, s = math.cos(angle), math.sin(angle)
    v = p - center
    return Point2(center.x + c * v.x - s * v.y, center.y + s * v.x + c * v.y)


def reflect_across(p: Point2, line_a: Point2, line_b: Point2) -> Point2:
    """Mirror image of ``p`` across the line through ``line_a`` and ``line_b``."""
    d = line_b - line_a
    n = d.norm()
    if n < 1e-15:
        raise GeometryError("degenerate mirror line")
    d = d * (1.0 / n)
    v = p - line_a
    along = v.dot(d)
    foot = line_a + d * along
    return foot * 2.0 - p


def reflect_direction(d: Point2, mirror: Point2) -> Point2:
    """Reflect direction vector ``d`` across the direction ``mirror``."""
    m = mirror.unit()
    return m * (2.0 * d.dot(m)) - d


def bisector_ray(vertex: Point2, toward_1: Point2, toward_2: Point2) -> Ray2:
    """Ray from ``vertex`` along the internal bisector of the angle to the two targets."""
    u = toward_1 - vertex
    v = toward_2 - vertex
    if u.norm() < 1e-15 or v.norm() < 1e-15:
        raise GeometryError("bisector leg has zero length")
    u = u.unit()
    v = v.unit()
    s = u + v
    if s.norm() < 1e-12:
        # Opposite legs: bisector is perpendicular; pick the CCW one.
        s = u.perp()
    return Ray2(vertex, s.unit())


def angle_at(vertex: Point2, p: Point2, q: Point2) -> AngleRad:
    """Unsigned angle at ``vertex`` between the rays toward ``p`` and ``q``, in [0, pi]."""
    u = p - vertex
    v = q - vertex
    nu, nv = u.norm(), v.norm()
    if nu < 1e-15 or nv < 1e-15:
        raise GeometryError("angle leg has zero length")
    return math.atan2(abs(u.cross(v)), u.dot(v))


def signed_angle(u: Point2, v: Point2) -> AngleRad:
    """Signed angle from direction ``u`` to ``v`` in (-pi, pi], CCW positive."""
    return math.atan2(u.cross(v), u.dot(v))


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))


def point_on_segment(p: Point2, a: Point2, b: Point2, eps: float) -> bool:
    """True when ``p`` lies on the closed segment ``ab`` within ``eps``."""
    d = b - a
    n = d.norm()
    if n < eps:
        return p.close_to(a, eps)
    d = d * (1.0 / n)
    v = p - a
    t = v.dot(d)
    if t < -eps or t > n + eps:
        return False
    return abs(v.cross(d)) <= eps


def segments_cross(
    a1: Point2, a2: Point2, b1: Point2, b2: Point2, eps: float
) -> bool:
    """True when the open interiors of two segments intersect transversally.

    Touching at shared endpoints or T-junctions at endpoints does not count;
    collinear overlap of positive length does.
    """
    da = a2 - a1
    db = b2 - b1
    denom = da.cross(db)
    diff = b1 - a1
    if abs(denom) < PARALLEL_EPS:
        # Collinear means the lateral offset of b's line is below eps.
        if abs(diff.cross(da)) > eps * da.norm():
            return False
        # Collinear: overlap of more than a point?
        na = da.norm()
        if na < eps:
            return False
        d = da * (1.0 / na)
        t1 = (b1 - a1).dot(d)
        t2 = (b2 - a1).dot(d)
        lo, hi = min(t1, t2), max(t1, t2)
        return min(hi, na) - max(lo, 0.0) > eps
    t = diff.cross(db) / denom
    u = diff.cross(da) / denom
    # Crossing at an endpoint of either segment is a legal junction; the
    # margins are parametric (eps over segment length plus a relative
    # floor) so far-away, nearly parallel creases do not trip the test.
    mt = eps / max(da.norm(), eps) + 1e-7
    mu = eps / max(db.norm(), eps) + 1e-7
    return mt < t < 1.0 - mt and mu < u < 1.0 - mu
