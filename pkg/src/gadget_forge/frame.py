"""Gadget parameters, admissibility checks and the shared pleat frame.

Canonical coordinates: the apex A sits at the origin and the pleat apex C
on the positive x axis.  The left ridge copy B_L lies at azimuth +gamma_l,
the right copy B_R at -gamma_r, both at distance ``ab_len`` from A.  The
development is the mirror image of the usual hand-drawn figures, so the
prescribed pleat rotation delta_l turns ell_L *counterclockwise* here;
all closed-form relations (r, the gamma_sigma arctangent, the bisection
property of AP) hold verbatim in this frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    AngleRad,
    GeometryError,
    Point2,
    Ray2,
    angle_at,
    line_intersection,
    midpoint,
    unit,
)

LEFT = "L"
RIGHT = "R"
SIDES = (LEFT, RIGHT)

# Specs closer than this to alpha = beta_l + beta_r count as flat gadgets.
FLAT_EPS = 1e-9


class ValidationError(ValueError):
    """Raised when an operation requires a spec that fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{code}: {msg}" for code, msg in self.violations))


class UnsupportedConstructionError(ValueError):
    """The spec is valid but outside what the requested construction covers."""


class InfeasibleError(ValueError):
    """The construction exists but has no solution for this spec/parameters."""


def other_side(side: str) -> str:
    if side == LEFT:
        return RIGHT
    if side == RIGHT:
        return LEFT
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


@dataclass(frozen=True)
class GadgetSpec:
    """Defining angles of one gadget plus the ridge length.

    alpha is the apex angle of the top face, beta_l/beta_r the base angles
    of the side faces, delta_l/delta_r the prescribed rotations of the
    outgoing pleats, ab_len the ridge length that sets the scale.
    """

    alpha: AngleRad
    beta_l: AngleRad
    beta_r: AngleRad
    delta_l: AngleRad = 0.0
    delta_r: AngleRad = 0.0
    ab_len: float = 1.0

    def beta(self, side: str) -> AngleRad:
        return self.beta_l if side == LEFT else self.beta_r

    def delta(self, side: str) -> AngleRad:
        return self.delta_l if side == LEFT else self.delta_r

    @property
    def gamma(self) -> AngleRad:
        return 2.0 * math.pi - self.alpha - self.beta_l - self.beta_r

    @property
    def delta_sum(self) -> AngleRad:
        return self.delta_l + self.delta_r

    @property
    def is_flat(self) -> bool:
        return abs(self.alpha - (self.beta_l + self.beta_r)) <= FLAT_EPS


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()
    flat: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise ValidationError(self.violations)


def validate(spec: GadgetSpec) -> ValidationReport:
    """Check the admissibility conditions; returns a report, never raises.

    The report lists each violated condition by its label: (i) the three
    triangle-type inequalities on alpha/beta_l/beta_r, (ii) the angle-sum
    bound, (iii.a)-(iii.c) the pleat-rotation conditions.  The boundary
    case alpha = beta_l + beta_r is flagged as ``flat`` and is accepted
    only by the constructions that support it.
    """
    v = []
    a, bl, br = spec.alpha, spec.beta_l, spec.beta_r
    dl, dr = spec.delta_l, spec.delta_r
    for name, val in (("alpha", a), ("beta_l", bl), ("beta_r", br)):
        if not (0.0 < val < math.pi):
            v.append(("(0)", f"{name} must lie in (0, pi), got {val:.6g}"))
    if v:
        return ValidationReport(tuple(v))

    flat = spec.is_flat
    if a > bl + br + FLAT_EPS:
        v.append(("(i)", "alpha < beta_l + beta_r fails"))
    if bl >= a + br:
        v.append(("(i)", "beta_l < alpha + beta_r fails"))
    if br >= a + bl:
        v.append(("(i)", "beta_r < alpha + beta_l fails"))
    if a + bl + br >= 2.0 * math.pi:
        v.append(("(ii)", "alpha + beta_l + beta_r < 2*pi fails"))
    if dl < 0.0 or dr < 0.0:
        v.append(("(iii.a)", "delta_l, delta_r >= 0 fails"))
    for name, d, b in (("delta_l", dl, bl), ("delta_r", dr, br)):
        if d >= b or d >= math.pi / 2.0:
            v.append(("(iii.b)", f"{name} < beta and < pi/2 fails"))
    if spec.gamma + dl + dr >= math.pi:
        if dl == 0.0 and dr == 0.0:
            v.append(("(iii)", "alpha + beta_l + beta_r > pi fails (gamma < pi)"))
        else:
            v.append(("(iii.c)", "gamma + delta_l + delta_r < pi fails"))
    if not v:
        # gamma_sigma > 0 follows from (iii.c) through the arctangent split;
        # checked explicitly so bad specs cannot slip through rounding.
        try:
            d = derive_angles(spec, _checked=False)
        except (GeometryError, ZeroDivisionError, ValueError):
            v.append(("(iii.c)", "pleat frame apex angles degenerate"))
        else:
            if d.gamma_l <= 0.0 or d.gamma_r <= 0.0:
                v.append(("(iii.c)", "gamma split is not positive on both sides"))
    return ValidationReport(tuple(v), flat=flat)


@dataclass(frozen=True)
class DerivedAngles:
    """Angles and the length ratio derived from a valid spec."""

    gamma: AngleRad
    gamma_l: AngleRad
    gamma_r: AngleRad
    r: float
    omega: AngleRad
    beta_plus: AngleRad
    beta_minus: AngleRad
    beta_plus_prime: AngleRad

    def gamma_side(self, side: str) -> AngleRad:
        return self.gamma_l if side == LEFT else self.gamma_r


def gamma_split(gamma: AngleRad, delta_s: AngleRad, delta_o: AngleRad) -> AngleRad:
    """Apex split angle on the side with pleat rotation ``delta_s``.

    tan of the result is (1 - cos g + sin g * tan d_o) /
    (sin g + cos g * tan d_o + tan d_s); atan2 keeps obtuse splits honest.
    """
    to = math.tan(delta_o)
    ts = math.tan(delta_s)
    num = 1.0 - math.cos(gamma) + math.sin(gamma) * to
    den = math.sin(gamma) + math.cos(gamma) * to + ts
    return math.atan2(num, den)


def derive_angles(spec: GadgetSpec, _checked: bool = True) -> DerivedAngles:
    """Derived frame angles; cross-checks the two closed forms of r."""
    if _checked:
        validate(spec).raise_if_invalid()
    g = spec.gamma
    gl = gamma_split(g, spec.delta_l, spec.delta_r)
    gr = gamma_split(g, spec.delta_r, spec.delta_l)
    r_l = 1.0 / (math.cos(gl) - math.sin(gl) * math.tan(spec.delta_l))
    r_r = 1.0 / (math.cos(gr) - math.sin(gr) * math.tan(spec.delta_r))
    omega = gl - g / 2.0
    # Alternative closed form of r through omega; guards the split above.
    td = math.tan(spec.delta_l) + math.tan(spec.delta_r)
    r_alt = (2.0 * math.sin(g / 2.0) * math.cos(omega)) / (
        math.sin(g) + ((1.0 + math.cos(g)) / 2.0 - math.cos(omega) ** 2) * td
    )
    if _checked and (abs(r_l - r_r) > 1e-10 * abs(r_l) or abs(r_l - r_alt) > 1e-10 * abs(r_l)):
        raise GeometryError(
            f"inconsistent pleat-frame ratio: {r_l!r}, {r_r!r}, {r_alt!r}"
        )
    return DerivedAngles(
        gamma=g,
        gamma_l=gl,
        gamma_r=gr,
        r=r_l,
        omega=omega,
        beta_plus=spec.beta_l + spec.beta_r,
        beta_minus=spec.beta_r - spec.beta_l,
        beta_plus_prime=spec.beta_l + spec.beta_r + g / 2.0,
    )


@dataclass(frozen=True)
class PleatFrame:
    """Realized frame: construction points and the pleat rays.

    Rays m_l/m_r are anchored at P (which lies on both perpendicular
    bisectors) and run in the matching ell direction; their supporting
    lines are the full bisectors.
    """

    spec: GadgetSpec
    derived: DerivedAngles
    a: Point2
    b_l: Point2
    b_r: Point2
    c: Point2
    p: Point2
    j_l: Ray2
    j_r: Ray2
    k_l: Ray2
    k_r: Ray2
    ell_l: Ray2
    ell_r: Ray2
    m_l: Ray2
    m_r: Ray2
    ell_prime_l: Ray2
    ell_prime_r: Ray2

    def b(self, side: str) -> Point2:
        return self.b_l if side == LEFT else self.b_r

    def j(self, side: str) -> Ray2:
        return self.j_l if side == LEFT else self.j_r

    def k(self, side: str) -> Ray2:
        return self.k_l if side == LEFT else self.k_r

    def ell(self, side: str) -> Ray2:
        return self.ell_l if side == LEFT else self.ell_r

    def m(self, side: str) -> Ray2:
        return self.m_l if side == LEFT else self.m_r

    def ell_prime(self, side: str) -> Ray2:
        return self.ell_prime_l if side == LEFT else self.ell_prime_r

    def fan_azimuth(self, side: str, fan_angle: AngleRad) -> AngleRad:
        """Azimuth of the ray from B_side whose fan angle from B->A is ``fan_angle``.

        The fan opens from the ray B->A through E, P and ell toward k;
        counterclockwise on the left side, clockwise on the right.
        """
        base = (self.a - self.b(side)).azimuth()
        sign = 1.0 if side == LEFT else -1.0
        return base + sign * fan_angle

    def fan_ray(self, side: str, fan_angle: AngleRad) -> Ray2:
        return Ray2.from_azimuth(self.b(side), self.fan_azimuth(side, fan_angle))

    def fan_of(self, side: str, p: Point2) -> AngleRad:
        """Fan angle in [0, 2*pi) of the ray from B_side through ``p``."""
        base = (self.a - self.b(side)).azimuth()
        sign = 1.0 if side == LEFT else -1.0
        raw = sign * ((p - self.b(side)).azimuth() - base)
        return raw % (2.0 * math.pi)


def build_frame(spec: GadgetSpec) -> PleatFrame:
    """Realize the prescribed-pleat frame in canonical coordinates."""
    validate(spec).raise_if_invalid()
    d = derive_angles(spec)
    ab = spec.ab_len
    a = Point2(0.0, 0.0)
    b_l = unit(d.gamma_l) * ab
    b_r = unit(-d.gamma_r) * ab
    c = Point2(d.r * ab, 0.0)

    j_l = Ray2.from_azimuth(a, d.gamma_l + spec.beta_l)
    j_r = Ray2.from_azimuth(a, -(d.gamma_r + spec.beta_r))
    k_l = Ray2.from_azimuth(b_l, d.gamma_l + spec.beta_l)
    k_r = Ray2.from_azimuth(b_r, -(d.gamma_r + spec.beta_r))
    ell_l = Ray2.from_azimuth(b_l, d.gamma_l + spec.delta_l)
    ell_r = Ray2.from_azimuth(b_r, -(d.gamma_r + spec.delta_r))

    # P: common point of the perpendicular bisectors of B_L C and B_R C.
    p = line_intersection(
        midpoint(b_l, c), ell_l.direction, midpoint(b_r, c), ell_r.direction
    )
    if p is None:
        raise GeometryError("perpendicular bisectors of the pleat frame are parallel")
    m_l = Ray2(p, ell_l.direction)
    m_r = Ray2(p, ell_r.direction)
    ell_prime_l = Ray2(c, ell_l.direction)
    ell_prime_r = Ray2(c, ell_r.direction)
    return PleatFrame(
        spec=spec,
        derived=d,
        a=a,
        b_l=b_l,
        b_r=b_r,
        c=c,
        p=p,
        j_l=j_l,
        j_r=j_r,
        k_l=k_l,
        k_r=k_r,
        ell_l=ell_l,
        ell_r=ell_r,
        m_l=m_l,
        m_r=m_r,
        ell_prime_l=ell_prime_l,
        ell_prime_r=ell_prime_r,
    )


def rho_from_psi(psi_l: AngleRad, derived: DerivedAngles) -> AngleRad:
    """Rotation at C of the auxiliary arc point, from its rotation psi_l at A.

    tan rho = sin psi / (r - cos psi); requires psi_l strictly inside
    (-gamma_r, gamma_l).
    """
    if not (-derived.gamma_r < psi_l < derived.gamma_l):
        raise InfeasibleError(
            f"psi_l={psi_l:.6g} outside (-gamma_r, gamma_l)="
            f"({-derived.gamma_r:.6g}, {derived.gamma_l:.6g})"
        )
    return math.atan2(math.sin(psi_l), derived.r - math.cos(psi_l))


def psi_from_rho(rho_l: AngleRad, derived: DerivedAngles) -> AngleRad:
    """Inverse of :func:`rho_from_psi`: psi = asin(r sin rho) - rho."""
    s = derived.r * math.sin(rho_l)
    if abs(s) > 1.0:
        raise InfeasibleError(f"rho_l={rho_l:.6g} maps outside the arc")
    return math.asin(s) - rho_l


def frame_points(frame: PleatFrame) -> dict[str, Point2]:
    """Named construction points; the *_dir entries are points one ridge
    length along the matching pleat ray, for angle bookkeeping."""
    ab = frame.spec.ab_len
    pts = {
        "A": frame.a,
        "B_L": frame.b_l,
        "B_R": frame.b_r,
        "C": frame.c,
        "P": frame.p,
    }
    for name, ray in (
        ("j_L", frame.j_l),
        ("j_R", frame.j_r),
        ("k_L", frame.k_l),
        ("k_R", frame.k_r),
        ("ell_L", frame.ell_l),
        ("ell_R", frame.ell_r),
        ("m_L", frame.m_l),
        ("m_R", frame.m_r),
        ("ellp_L", frame.ell_prime_l),
        ("ellp_R", frame.ell_prime_r),
    ):
        pts[name + "_dir"] = ray.at(ab)
    return pts


def check_frame(frame: PleatFrame, tol: float = 1e-9) -> list[str]:
    """Internal consistency audit of a built frame; returns failure messages."""
    s, d = frame.spec, frame.derived
    ab = s.ab_len
    bad = []
    if abs(frame.b_l.distance_to(frame.a) - ab) > tol * ab:
        bad.append("|A B_L| != ab_len")
    if abs(frame.b_r.distance_to(frame.a) - ab) > tol * ab:
        bad.append("|A B_R| != ab_len")
    for side in SIDES:
        bc = frame.c - frame.b(side)
        if abs(bc.dot(frame.ell(side).direction)) > tol * ab:
            bad.append(f"ell_{side} not perpendicular to B_{side} C")
        if abs(angle_at(frame.a, frame.b(side), frame.c) - d.gamma_side(side)) > tol:
            bad.append(f"angle B_{side} A C != gamma_{side}")
        want = s.gamma / 2.0 + s.delta_sum
        if abs(angle_at(frame.b(side), frame.a, frame.p) - want) > tol:
            bad.append(f"angle A B_{side} P != gamma/2 + delta_l + delta_r")
    if abs(frame.p.distance_to(frame.b_l) - frame.p.distance_to(frame.b_r)) > tol * ab:
        bad.append("P not equidistant from B_L and B_R")
    if abs(frame.c.x - d.r * ab) > tol * ab or abs(frame.c.y) > tol * ab:
        bad.append("C not at (r * ab, 0)")
    return bad
