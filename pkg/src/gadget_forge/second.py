"""Symmetric-style negative gadget obtained by rotating the closing crease.

Works when both side-face base angles sit on the same side of a right
angle.  The pleat bisectors meet the apex-angle bisectors at E; the
closing crease through the frame apex C is rotated by half the
compensation angle theta so the flap base lines up with the folded ridge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern
from .frame import (
    GadgetSpec,
    InfeasibleError,
    UnsupportedConstructionError,
    build_frame,
    derive_angles,
    validate,
)
from .geometry import (
    GeometryError,
    Point2,
    Ray2,
    bisector_ray,
    intersect_rays,
    line_intersection,
    normalize_angle,
    rotate_about,
)

RIGHT_ANGLE_EPS = 1e-12


@dataclass(frozen=True)
class ThetaData:
    theta: Optional[float]  # None when both betas are right angles (free)
    theta_l: float
    theta_r: float
    b_prime: Point2
    b_prime_0: Point2
    free: bool

    @property
    def feasible(self) -> bool:
        if self.theta_l + self.theta_r <= 0.0:
            return False
        if self.free:
            return True
        return -self.theta_l < self.theta < self.theta_r


def _theta_formula(spec: GadgetSpec) -> float:
    """Double-arctangent closed form, robust at beta = pi/2 poles."""
    g2 = math.tan(spec.gamma / 2.0)
    num1 = math.sin(spec.beta_r - spec.beta_l) * g2
    den1 = 2.0 * math.cos(spec.beta_l) * math.cos(spec.beta_r) * g2 + math.sin(
        spec.beta_l + spec.beta_r
    )
    # Principal branch: |theta| < pi/2 by construction even when the
    # denominator goes negative (both base angles obtuse).
    if abs(den1) < 1e-300:
        term1 = math.copysign(math.pi / 2.0, num1)
    else:
        term1 = math.atan(num1 / den1)
    tl, tr = math.tan(spec.delta_l), math.tan(spec.delta_r)
    term2 = math.atan((tr - tl) / (2.0 + (tl + tr) / g2))
    return term1 - term2


def compute_theta(spec: GadgetSpec) -> ThetaData:
    """Compensation angle data; geometric value cross-checked against the
    closed form within 1e-9."""
    validate(spec).raise_if_invalid()
    d = derive_angles(spec)
    off_l = spec.beta_l - math.pi / 2.0
    off_r = spec.beta_r - math.pi / 2.0
    if off_l * off_r < -RIGHT_ANGLE_EPS:
        raise UnsupportedConstructionError(
            "base angles must lie on the same side of pi/2"
        )
    frame = build_frame(spec)
    perp_l = frame.k_l.direction.perp()
    perp_r = frame.k_r.direction.perp()
    b_prime = line_intersection(frame.b_l, perp_l, frame.b_r, perp_r)
    if b_prime is None:
        raise GeometryError("base perpendiculars are parallel")
    theta_l = math.pi - 2.0 * d.gamma_r - 2.0 * spec.delta_r
    theta_r = math.pi - 2.0 * d.gamma_l - 2.0 * spec.delta_l

    free = abs(off_l) <= RIGHT_ANGLE_EPS and abs(off_r) <= RIGHT_ANGLE_EPS
    if free:
        return ThetaData(None, theta_l, theta_r, b_prime, frame.a, True)
    if max(off_l, off_r) > RIGHT_ANGLE_EPS:
        b0 = b_prime
    else:
        b0 = frame.a * 2.0 - b_prime
    # Positive theta turns the frame axis clockwise onto the ray A B'_0
    # in canonical coordinates (the development is mirrored).
    theta = -normalize_angle((b0 - frame.a).azimuth())
    formula = _theta_formula(spec)
    if abs(normalize_angle(theta - formula)) > 1e-9:
        raise GeometryError(
            f"geometric theta {theta!r} disagrees with closed form {formula!r}"
        )
    return ThetaData(theta, theta_l, theta_r, b_prime, b0, False)


def build_second(spec: GadgetSpec, theta_choice: Optional[float] = None, sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    rep = validate(spec)
    rep.raise_if_invalid()
    if spec.is_flat:
        raise UnsupportedConstructionError(
            "rotating construction does not cover the flat case"
        )
    td = compute_theta(spec)
    if td.free:
        theta = 0.0 if theta_choice is None else theta_choice
    else:
        if theta_choice is not None and abs(theta_choice - td.theta) > 1e-9:
            raise InfeasibleError(
                "theta is determined by the base angles; a free choice exists "
                "only when both base angles are right angles"
            )
        theta = td.theta
    if not (-td.theta_l < theta < td.theta_r):
        raise InfeasibleError(
            f"theta={theta:.6g} outside (-theta_l, theta_r)="
            f"({-td.theta_l:.6g}, {td.theta_r:.6g})"
        )

    frame = build_frame(spec)
    d = frame.derived
    a, c = frame.a, frame.c
    d_pt = Point2(spec.ab_len, 0.0)

    e = {}
    g = {}
    p_rot = {}
    p_straight = {}
    # The rotation is clockwise here (mirrored development), so the
    # direction of the closing crease turns by -theta/2.
    rot_dir = rotate_about(c + Point2(0.0, 1.0), c, -theta / 2.0) - c
    for side in ("L", "R"):
        e_pt = intersect_rays(bisector_ray(a, frame.b(side), c), frame.m(side))
        if e_pt is None:
            raise GeometryError(f"E_{side} construction failed")
        e[side] = e_pt
        g_pt = line_intersection(d_pt, Point2(0.0, 1.0), a, e_pt - a)
        if g_pt is None:
            raise GeometryError(f"G_{side} construction failed")
        u = (g_pt - a).dot((e_pt - a).unit()) / a.distance_to(e_pt)
        if u < -1e-9 or u > 1.0 + 1e-9:
            raise GeometryError(f"G_{side} fell outside segment A E_{side}")
        g[side] = g_pt
        ps = line_intersection(c, Point2(0.0, 1.0), e_pt, frame.ell(side).direction)
        if ps is None:
            raise GeometryError(f"P'_{side} construction failed")
        p_straight[side] = ps
        pr = line_intersection(c, rot_dir, e_pt, frame.ell(side).direction)
        if pr is None:
            raise InfeasibleError(f"rotated closing crease misses the pleat m_{side}")
        if (pr - e_pt).dot(frame.ell(side).direction) < -1e-9 * spec.ab_len:
            raise InfeasibleError(f"P_{side} landed behind E_{side}")
        p_rot[side] = pr

    meta = ConstructionReport(construction="second")
    meta.scalars.update(
        {
            "theta": theta,
            "theta_l": td.theta_l,
            "theta_r": td.theta_r,
            "gamma": d.gamma,
            "free_theta": float(td.free),
        }
    )
    if td.free:
        meta.branches.append("both base angles right; theta free")
    meta.interference = {
        "L": spec.ab_len * math.tan(d.gamma_l / 2.0),
        "R": spec.ab_len * math.tan(d.gamma_r / 2.0),
    }

    builder = assembly.Builder(frame, meta, sheet_scale)
    builder.base_net_creases()
    builder.add_points(
        D=d_pt,
        E_L=e["L"],
        E_R=e["R"],
        G_L=g["L"],
        G_R=g["R"],
        P_L=p_rot["L"],
        P_R=p_rot["R"],
    )
    builder.add_points(**{"B'": td.b_prime, "B'_0": td.b_prime_0})
    for side in ("L", "R"):
        builder.ray(Ray2(e[side], frame.ell(side).direction), MOUNTAIN, f"m_{side}")
        builder.segment(a, e[side], MOUNTAIN, f"A E_{side}")
        builder.segment(frame.b(side), g[side], MOUNTAIN, f"B_{side} G_{side}")
        if p_rot[side].close_to(e[side], 1e-9 * spec.ab_len):
            # Boundary of the automatic range: the ridge-to-E valley and
            # ridge-to-P mountain coincide and cancel out.
            meta.merges.append(f"P_{side} = E_{side}; ridge creases cancel")
        else:
            builder.segment(frame.b(side), e[side], VALLEY, f"B_{side} E_{side}")
            builder.segment(frame.b(side), p_rot[side], MOUNTAIN, f"B_{side} P_{side}")
    builder.segment(e["L"], e["R"], MOUNTAIN, "E_L E_R")
    builder.segment(g["L"], g["R"], VALLEY, "G_L G_R")
    builder.segment(p_rot["L"], p_rot["R"], VALLEY, "P_L P_R")

    meta.flat_vertices = ["E_L", "E_R", "G_L", "G_R", "P_L", "P_R"]
    for side, s in (("L", 1.0), ("R", -1.0)):
        want = spec.beta(side) + d.gamma_side(side) - math.pi / 2.0 + s * theta / 2.0
        meta.add_identity(
            f"kBl-PBl=beta+gamma-pi/2{'+' if s > 0 else '-'}theta/2@{side}",
            [
                (1.0, ("angle", f"B_{side}", f"k_{side}_dir", f"ell_{side}_dir")),
                (-1.0, ("angle", f"B_{side}", f"P_{side}", f"ell_{side}_dir")),
                (-1.0, ("const", want)),
            ],
        )
        # Folded flap-base angle from the pattern (alternating combination).
        meta.add_identity(
            f"kDG (folded) = beta+gamma-pi/2{'+' if s > 0 else '-'}theta@{side}",
            [
                (1.0, ("angle", f"B_{side}", f"k_{side}_dir", f"ell_{side}_dir")),
                (-1.0, ("angle", f"B_{side}", f"P_{side}", f"ell_{side}_dir")),
                (1.0, ("angle", f"B_{side}", f"E_{side}", f"P_{side}")),
                (-1.0, ("angle", f"B_{side}", f"E_{side}", f"G_{side}")),
                (-1.0, ("const", spec.beta(side) + d.gamma_side(side) - math.pi / 2.0 + s * theta)),
            ],
        )
        meta.add_identity(
            f"ADG_{side} = pi/2",
            [
                (1.0, ("angle", "D", "A", f"G_{side}")),
                (-1.0, ("const", math.pi / 2.0)),
            ],
        )
    return builder.finish()


def no_extra_tuck_margins(spec: GadgetSpec, theta: float) -> tuple[float, float]:
    """Positive margins mean no base-image tuck creases are needed."""
    d = derive_angles(spec)
    left = spec.beta_l + d.gamma_l - math.pi / 2.0 + theta / 2.0
    right = spec.beta_r + d.gamma_r - math.pi / 2.0 - theta / 2.0
    return left, right
