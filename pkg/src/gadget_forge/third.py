"""Unique negative gadget via the closed-form root of the foldability equation.

The auxiliary arc point D is rotated from the frame axis by psi_l (seen
from A) or rho_l (seen from C).  Requiring the folded ridge direction to
match the flap base direction pins rho_l as the unique root of

    Phi(rho) = (V1 - r*V2) * tan(rho) - W

on the open interval (gamma_r + delta_r - pi/2, pi/2 - gamma_l - delta_l).
V1 - r*V2 > 0 makes Phi strictly increasing, so the closed form
rho = atan(W / (V1 - r*V2)) is the root; a bisection fallback guards
near-degenerate specs and doubles as the test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern
from .frame import (
    DerivedAngles,
    GadgetSpec,
    InfeasibleError,
    PleatFrame,
    build_frame,
    derive_angles,
    psi_from_rho,
    validate,
)
from .geometry import (
    GeometryError,
    Ray2,
    bisector_ray,
    intersect_rays,
    line_intersection_params,
    unit,
)


@dataclass(frozen=True)
class ThirdSolution:
    rho_l: float
    psi_l: float
    v1: float
    v2: float
    w: float
    r: float
    omega: float
    t: float
    used_bisection: bool = False

    @property
    def rho_r(self) -> float:
        return -self.rho_l


def _vw(spec: GadgetSpec, d: DerivedAngles) -> tuple[float, float, float]:
    bl, br = spec.beta_l, spec.beta_r
    v1 = math.sin(bl + d.gamma_l) * math.cos(br) + math.sin(br + d.gamma_r) * math.cos(bl)
    v2 = math.sin(bl + br + d.gamma)
    w = math.cos(bl + d.gamma_l) * math.cos(br) - math.cos(br + d.gamma_r) * math.cos(bl)
    return v1, v2, w


def _vw_alt(spec: GadgetSpec, d: DerivedAngles) -> tuple[float, float, float]:
    """Equivalent forms through beta_+/beta_-/omega; used as a cross-check."""
    sg2 = math.sin(d.gamma / 2.0)
    co, so = math.cos(d.omega), math.sin(d.omega)
    base = math.sin(d.beta_plus_prime) + math.cos(d.beta_minus) * sg2
    v1 = base * co + math.sin(d.beta_minus) * sg2 * so
    v2 = math.sin(d.beta_plus_prime + d.gamma / 2.0)
    w = math.sin(d.beta_minus) * sg2 * co - base * so
    return v1, v2, w


def rho_interval(spec: GadgetSpec) -> tuple[float, float]:
    d = derive_angles(spec)
    return (d.gamma_r + spec.delta_r - math.pi / 2.0, math.pi / 2.0 - d.gamma_l - spec.delta_l)


def phi(rho_l: float, spec: GadgetSpec) -> float:
    """Foldability function Phi(rho_l); defined on the closed feasibility interval."""
    lo, hi = rho_interval(spec)
    if rho_l < lo - 1e-12 or rho_l > hi + 1e-12:
        raise InfeasibleError(
            f"rho_l={rho_l:.6g} outside closed interval [{lo:.6g}, {hi:.6g}]"
        )
    d = derive_angles(spec)
    v1, v2, w = _vw(spec, d)
    return (v1 - d.r * v2) * math.tan(rho_l) - w


def phi_endpoint_closed_forms(spec: GadgetSpec) -> tuple[float, float]:
    """Closed forms of Phi at the lower and upper interval endpoints."""
    d = derive_angles(spec)
    sg2 = math.sin(d.gamma / 2.0)
    hi = (
        2.0
        * sg2
        / (math.sin(d.gamma_l) + math.cos(d.gamma_l) * math.tan(spec.delta_l))
        * (math.sin(spec.beta_l) - math.tan(spec.delta_l) * math.cos(spec.beta_l))
        * math.sin(spec.beta_r + d.gamma / 2.0)
    )
    lo = (
        -2.0
        * sg2
        / (math.sin(d.gamma_r) + math.cos(d.gamma_r) * math.tan(spec.delta_r))
        * (math.sin(spec.beta_r) - math.tan(spec.delta_r) * math.cos(spec.beta_r))
        * math.sin(spec.beta_l + d.gamma / 2.0)
    )
    return lo, hi


def bisect_phi(spec: GadgetSpec, tol: float = 1e-13, maxiter: int = 200) -> float:
    """Bisection root of Phi on the open interval; independent of the closed form."""
    d = derive_angles(spec)
    v1, v2, w = _vw(spec, d)
    k = v1 - d.r * v2

    def f(rho: float) -> float:
        return k * math.tan(rho) - w

    lo = d.gamma_r + spec.delta_r - math.pi / 2.0
    hi = math.pi / 2.0 - d.gamma_l - spec.delta_l
    shrink = 1e-12 * (hi - lo)
    a, b = lo + shrink, hi - shrink
    fa, fb = f(a), f(b)
    if fa > 0.0 or fb < 0.0:
        raise InfeasibleError("Phi endpoint signs wrong; spec outside theory")
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or (b - a) < tol:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def phi_sign_changes(spec: GadgetSpec, grid: int = 64) -> int:
    """Sign changes of Phi on a uniform interior grid (uniqueness audit)."""
    d = derive_angles(spec)
    v1, v2, w = _vw(spec, d)
    k = v1 - d.r * v2
    lo = d.gamma_r + spec.delta_r - math.pi / 2.0
    hi = math.pi / 2.0 - d.gamma_l - spec.delta_l
    shrink = 1e-9 * (hi - lo)
    changes = 0
    prev = None
    for i in range(grid + 1):
        rho = (lo + shrink) + (hi - lo - 2.0 * shrink) * i / grid
        s = k * math.tan(rho) - w > 0.0
        if prev is not None and s != prev:
            changes += 1
        prev = s
    return changes


def solve_third(spec: GadgetSpec) -> ThirdSolution:
    """Closed-form rho_l/psi_l with the alternative-expression cross-checks."""
    validate(spec).raise_if_invalid()
    d = derive_angles(spec)
    v1, v2, w = _vw(spec, d)
    v1a, v2a, wa = _vw_alt(spec, d)
    if max(abs(v1 - v1a), abs(v2 - v2a), abs(w - wa)) > 1e-12 * max(1.0, abs(v1)):
        raise GeometryError("V/W alternative forms disagree")
    denom = v1 - d.r * v2
    used_bisection = False
    if denom <= 1e-12:
        rho = bisect_phi(spec)
        used_bisection = True
    else:
        rho = math.atan(w / denom)
    lo, hi = rho_interval(spec)
    if not (lo < rho < hi):
        raise InfeasibleError(
            f"solved rho_l={rho:.6g} escaped ({lo:.6g}, {hi:.6g}); invalid spec slipped through"
        )
    td = math.tan(spec.delta_l) + math.tan(spec.delta_r)
    tg2 = math.tan(d.gamma / 2.0)
    t = (math.tan(spec.delta_r) - math.tan(spec.delta_l)) / (2.0 + td / tg2)
    if abs(t - math.tan(d.omega)) > 1e-12:
        raise GeometryError("tan(omega) closed form disagrees with the gamma split")
    if not used_bisection and d.gamma > 1e-3 and abs(denom) > 1e-6:
        # Arctangent-free expression of tan(rho) in terms of t, compared on
        # the angle scale.  Skipped in the sliver regime (gap angle or the
        # slope coefficient nearly zero) where double precision cannot
        # separate the two algebraic routes; the bisection oracle still
        # covers those specs.
        sg2 = math.sin(d.gamma / 2.0)
        base = math.sin(d.beta_plus_prime) / sg2 + math.cos(d.beta_minus)
        r_form = 2.0 * math.sin(d.beta_plus_prime + d.gamma / 2.0) / (
            math.sin(d.gamma)
            + ((1.0 + math.cos(d.gamma)) / 2.0 - 1.0 / (1.0 + t * t)) * td
        )
        tan_rho_alt = (math.sin(d.beta_minus) - t * base) / (
            base + t * math.sin(d.beta_minus) - r_form
        )
        if abs(rho - math.atan(tan_rho_alt)) > 1e-10:
            raise GeometryError("tan(rho) alternative expression disagrees")
    psi = psi_from_rho(rho, d)
    if not (-d.gamma_r < psi < d.gamma_l):
        raise InfeasibleError(f"psi_l={psi:.6g} escaped (-gamma_r, gamma_l)")
    return ThirdSolution(
        rho_l=rho,
        psi_l=psi,
        v1=v1,
        v2=v2,
        w=w,
        r=d.r,
        omega=d.omega,
        t=t,
        used_bisection=used_bisection,
    )


def ridge_alignment_residual(spec: GadgetSpec, sol: ThirdSolution | None = None) -> float:
    """|e(DA).e(E_L E_R) - e(BA).e(E_L E_R)| from the explicit component forms.

    Planar check: the folded ridge direction has a vertical component, but
    the flap base direction does not, so only the listed 2D components enter.
    """
    if sol is None:
        sol = solve_third(spec)
    d = derive_angles(spec)
    alpha_r = math.pi - spec.beta_r - d.gamma_r
    e_da = (math.cos(alpha_r - sol.psi_l), math.sin(alpha_r - sol.psi_l))
    ang = spec.beta_r + d.gamma_r - sol.rho_l
    e_ee = (math.sin(ang), math.cos(ang))
    e_ba = (
        -math.cos(spec.beta_r),
        (math.cos(spec.alpha) * math.cos(spec.beta_r) - math.cos(spec.beta_l))
        / math.sin(spec.alpha),
    )
    lhs = e_da[0] * e_ee[0] + e_da[1] * e_ee[1]
    rhs = e_ba[0] * e_ee[0] + e_ba[1] * e_ee[1]
    return abs(lhs - rhs)


def third_interference_lengths(spec: GadgetSpec, sol: ThirdSolution | None = None) -> tuple[float, float]:
    """Flap reach |D G_L|, |D G_R| along the bottom edge, by closed form.

    Derived from the triangle A-D-G_side: the angle at A is half the arc
    angle (gamma_side -/+ psi)/2 and the angle at D is pi/2 +/- (psi + rho).
    On the symmetric locus both collapse to ab * tan(gamma/4).
    """
    validate(spec).raise_if_invalid()
    if sol is None:
        sol = solve_third(spec)
    d = derive_angles(spec)
    s = sol.psi_l + sol.rho_l
    half_l = (d.gamma_l - sol.psi_l) / 2.0
    half_r = (d.gamma_r + sol.psi_l) / 2.0
    k_l = spec.ab_len / (math.cos(s) / math.tan(half_l) - math.sin(s))
    k_r = spec.ab_len / (math.cos(s) / math.tan(half_r) + math.sin(s))
    return k_l, k_r


def _gadget_core_points(frame: PleatFrame, psi_l: float):
    """D, E, G, P of the unique gadget inside an existing frame."""
    spec = frame.spec
    d_pt = unit(psi_l) * spec.ab_len + frame.a
    e = {}
    for side in ("L", "R"):
        bis = bisector_ray(frame.a, frame.b(side), d_pt)
        e_pt = intersect_rays(bis, frame.m(side))
        if e_pt is None:
            raise GeometryError(f"E_{side} construction failed")
        e[side] = e_pt
    ee_dir = (e["R"] - e["L"]).unit()
    g = {}
    p = {}
    for side in ("L", "R"):
        params = line_intersection_params(d_pt, ee_dir, frame.a, e[side] - frame.a)
        if params is None:
            raise GeometryError(f"G_{side} construction failed")
        _, u = params
        if u < -1e-9 or u > 1.0 + 1e-9:
            raise GeometryError(f"G_{side} fell outside segment A E_{side}")
        g[side] = frame.a + (e[side] - frame.a) * u
        p_pt = intersect_rays(Ray2(frame.c, ee_dir if side == "R" else ee_dir * -1.0), frame.m(side), eps=1e-9)
        if p_pt is None:
            raise GeometryError(f"P_{side} construction failed")
        p[side] = p_pt
    return d_pt, e, g, p


def build_third(spec: GadgetSpec, sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    """Crease pattern of the unique prescribed-pleat negative gadget."""
    report = validate(spec)
    report.raise_if_invalid()
    frame = build_frame(spec)
    sol = solve_third(spec)
    d_pt, e, g, p = _gadget_core_points(frame, sol.psi_l)

    k_l, k_r = third_interference_lengths(spec, sol)
    meta = ConstructionReport(construction="third")
    meta.scalars.update(
        {
            "gamma": frame.derived.gamma,
            "gamma_l": frame.derived.gamma_l,
            "gamma_r": frame.derived.gamma_r,
            "r": frame.derived.r,
            "rho_l": sol.rho_l,
            "psi_l": sol.psi_l,
            "v1": sol.v1,
            "v2": sol.v2,
            "w": sol.w,
            "ridge_alignment_residual": ridge_alignment_residual(spec, sol),
        }
    )
    meta.interference = {"L": k_l, "R": k_r}
    if sol.used_bisection:
        meta.warnings.append("closed form near-degenerate; used bisection fallback")
    if report.flat:
        meta.branches.append("flat gadget (alpha = beta_l + beta_r)")

    builder = assembly.Builder(frame, meta, sheet_scale)
    builder.add_points(D=d_pt, E_L=e["L"], E_R=e["R"], G_L=g["L"], G_R=g["R"], P_L=p["L"], P_R=p["R"])
    builder.base_net_creases()
    for side in ("L", "R"):
        builder.ray(Ray2(e[side], frame.ell(side).direction), MOUNTAIN, f"m_{side}")
        builder.segment(frame.a, e[side], MOUNTAIN, f"A E_{side}")
        builder.segment(frame.b(side), e[side], VALLEY, f"B_{side} E_{side}")
        builder.segment(frame.b(side), g[side], MOUNTAIN, f"B_{side} G_{side}")
        builder.segment(frame.b(side), p[side], MOUNTAIN, f"B_{side} P_{side}")
    builder.segment(e["L"], e["R"], MOUNTAIN, "E_L E_R")
    builder.segment(g["L"], g["R"], VALLEY, "G_L G_R")
    builder.segment(p["L"], p["R"], VALLEY, "P_L P_R")

    meta.flat_vertices = ["E_L", "E_R", "G_L", "G_R", "P_L", "P_R"]
    if report.flat:
        meta.flat_vertices += ["B_L", "B_R"]
    for side in ("L", "R"):
        meta.add_identity(
            f"EBG=EBP@{side}",
            [
                (1.0, ("angle", f"B_{side}", f"E_{side}", f"G_{side}")),
                (-1.0, ("angle", f"B_{side}", f"E_{side}", f"P_{side}")),
            ],
        )
        rho_side = sol.rho_l if side == "L" else -sol.rho_l
        want = spec.beta(side) + frame.derived.gamma_side(side) + rho_side - math.pi / 2.0
        meta.add_identity(
            f"kBl-PBl=beta+gamma+rho-pi/2@{side}",
            [
                (1.0, ("angle", f"B_{side}", f"k_{side}_dir", f"ell_{side}_dir")),
                (-1.0, ("angle", f"B_{side}", f"P_{side}", f"ell_{side}_dir")),
                (-1.0, ("const", want)),
            ],
        )
        if report.flat:
            meta.add_identity(
                f"flat:ABE+kBl=pi@{side}",
                [
                    (1.0, ("angle", f"B_{side}", "A", f"E_{side}")),
                    (1.0, ("angle", f"B_{side}", f"k_{side}_dir", f"ell_{side}_dir")),
                    (-1.0, ("const", math.pi)),
                ],
            )
            meta.add_identity(
                f"flat:ABk+EBl=pi@{side}",
                [
                    (1.0, ("angle", f"B_{side}", "A", f"k_{side}_dir")),
                    (1.0, ("angle", f"B_{side}", f"E_{side}", f"ell_{side}_dir")),
                    (-1.0, ("const", math.pi)),
                ],
            )
    return builder.finish()
