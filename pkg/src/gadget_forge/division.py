"""Proportional division of a negative gadget into stacked sub-gadgets.

Only zero pleat rotations are supported.  The apex-to-frame segment is
divided from the frame apex C; the lowest level is a scaled copy of the
unique closed-form gadget, the levels above are repeating bands whose
per-level rotation psi^(n) must keep the folded pleat images apart
(cosine bound per level).  When a band's base image reaches the apex
crease, extra G/M creases appear; otherwise the base images of adjacent
levels meet on the band bisector at a J point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern, PatternError
from .frame import (
    GadgetSpec,
    UnsupportedConstructionError,
    ValidationReport,
    build_frame,
    validate,
)
from .geometry import (
    GeometryError,
    Point2,
    Ray2,
    intersect_ray_line,
    intersect_ray_segment,
    line_intersection,
    midpoint,
    reflect_direction,
)
from .third import _gadget_core_points, solve_third

EQUAL_DIVISION_GAMMA_MAX = 2.0 * math.acos(1.0 / 3.0)  # about 141.06 degrees
PSI_MARGIN = 1e-9


@dataclass(frozen=True)
class DivisionPlan:
    """d stacked gadgets in the given proportions, counted from the frame
    apex; psi_list holds the per-level rotations for levels 2..d."""

    d: int
    proportions: tuple = ()
    psi_list: tuple = ()

    @classmethod
    def equal(cls, d: int, psi: float = 0.0) -> "DivisionPlan":
        return cls(d, tuple(1.0 for _ in range(d)), tuple(psi for _ in range(d - 1)))

    def normalized(self) -> "DivisionPlan":
        props = self.proportions or tuple(1.0 for _ in range(self.d))
        total = sum(props)
        props = tuple(p * self.d / total for p in props)
        psi = self.psi_list or tuple(0.0 for _ in range(self.d - 1))
        return DivisionPlan(self.d, props, psi)

    @property
    def q(self) -> tuple:
        out = []
        acc = 0.0
        for p in self.proportions:
            acc += p
            out.append(acc)
        return tuple(out)

    @property
    def is_equal(self) -> bool:
        return all(abs(p - 1.0) <= 1e-12 for p in self.proportions)


def psi_cos_bound(r: float, p_n: float, q_n: float) -> float:
    """Smallest admissible cos(psi^(n)) for one level."""
    return ((r * r - 1.0) / 2.0 * (p_n / q_n) + 1.0) / r


def validate_plan(spec: GadgetSpec, plan: DivisionPlan) -> ValidationReport:
    """Check the stacking inequalities; delta != 0 is a hard error."""
    rep = validate(spec)
    if not rep.ok:
        return rep
    if spec.delta_l != 0.0 or spec.delta_r != 0.0:
        raise UnsupportedConstructionError("division requires delta_l = delta_r = 0")
    plan = plan.normalized()
    v = []
    if plan.d < 2:
        v.append(("(plan)", "need at least two levels"))
        return ValidationReport(tuple(v), flat=rep.flat)
    if len(plan.proportions) != plan.d or len(plan.psi_list) != plan.d - 1:
        v.append(("(plan)", "need d proportions and d-1 psi values"))
        return ValidationReport(tuple(v), flat=rep.flat)
    if any(p <= 0.0 for p in plan.proportions):
        v.append(("(plan)", "proportions must be positive"))
        return ValidationReport(tuple(v), flat=rep.flat)
    g = spec.gamma
    r = 1.0 / math.cos(g / 2.0)
    q = plan.q
    for n in range(2, plan.d + 1):
        p_n, q_n = plan.proportions[n - 1], q[n - 1]
        if (r + 1.0) / 2.0 * p_n > q_n:
            msg = f"(r+1)/2 * p_{n} <= q_{n} fails"
            if plan.is_equal:
                msg += (
                    f" (equal division needs gamma <= "
                    f"{math.degrees(EQUAL_DIVISION_GAMMA_MAX):.2f} deg)"
                )
            v.append(("(pn_qn)", msg))
    for n in range(2, plan.d + 1):
        psi = plan.psi_list[n - 2]
        if not (-g / 2.0 < psi < g / 2.0):
            v.append(("(psi_n)", f"psi^({n}) outside (-gamma/2, gamma/2)"))
            continue
        bound = psi_cos_bound(r, plan.proportions[n - 1], q[n - 1])
        # Equality glues the folded pleat images; keep a strict margin.
        if math.cos(psi) < bound + PSI_MARGIN:
            v.append(
                ("(psi_n)", f"cos psi^({n}) below the level bound {bound:.6g}")
            )
    return ValidationReport(tuple(v), flat=rep.flat)


def g_exists(spec: GadgetSpec, psi_n: float, side: str, p_n: float, q_n: float) -> bool:
    """Whether the level-n base image reaches the apex crease on ``side``.

    The threshold quantity (tan(gamma/2)/2) (1/tan(phi/2) - 1/tan(beta))
    p_n exceeds q_n exactly when the G/M creases appear.
    """
    g = spec.gamma
    phi = g / 2.0 - psi_n if side == "L" else g / 2.0 + psi_n
    beta = spec.beta(side)
    inv_tan_beta = 1.0 / math.tan(beta) if abs(beta - math.pi / 2.0) > 1e-15 else 0.0
    quantity = math.tan(g / 2.0) / 2.0 * (1.0 / math.tan(phi / 2.0) - inv_tan_beta)
    return quantity * p_n > q_n


def psi_avoiding_G(spec: GadgetSpec, proportions) -> list | None:
    """Per-level psi choices that avoid the G/M creases on both sides,
    searched on a 1e-3 rad grid inside the level bound; None when some
    level has no such psi."""
    plan = DivisionPlan(len(proportions), tuple(proportions)).normalized()
    rep = validate(spec)
    rep.raise_if_invalid()
    g = spec.gamma
    r = 1.0 / math.cos(g / 2.0)
    q = plan.q
    out = []
    step = 1e-3
    for n in range(2, plan.d + 1):
        p_n, q_n = plan.proportions[n - 1], q[n - 1]
        bound = psi_cos_bound(r, p_n, q_n)
        if bound > 1.0:
            return None
        psi_max = math.acos(min(1.0, bound + PSI_MARGIN))
        best = None
        k_max = int(psi_max / step)
        for k in range(0, k_max + 1):
            for sgn in ((0.0,) if k == 0 else (1.0, -1.0)):
                psi = sgn * k * step
                if abs(psi) > psi_max:
                    continue
                if not g_exists(spec, psi, "L", p_n, q_n) and not g_exists(
                    spec, psi, "R", p_n, q_n
                ):
                    best = psi
                    break
            if best is not None:
                break
        if best is None:
            return None
        out.append(best)
    return out


@dataclass
class _Level:
    n: int
    apex: Point2
    b: dict  # side -> ridge-copy point at this level
    m_mid: dict = field(default_factory=dict)
    e: dict = field(default_factory=dict)
    f_prime: Point2 | None = None


def build_division(spec: GadgetSpec, plan: DivisionPlan, sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    plan = plan.normalized()
    rep = validate_plan(spec, plan)
    rep.raise_if_invalid()
    frame = build_frame(spec)
    a, c = frame.a, frame.c
    d_levels = plan.d
    q = plan.q
    g = spec.gamma
    ab = spec.ab_len
    u_len = ab / d_levels
    eps = 1e-9 * ab

    meta = ConstructionReport(construction="division")
    meta.scalars.update(
        {
            "d": float(d_levels),
            "gamma": g,
            "r": frame.derived.r,
        }
    )

    def frac(n: int) -> float:
        return q[n - 1] / d_levels if n >= 1 else 0.0

    # Level skeleton: apexes along C->A, ridge copies along C->B_sigma.
    levels = {}
    for n in range(0, d_levels + 1):
        t = frac(n) if n >= 1 else 0.0
        apex = c + (a - c) * t
        b_pts = {side: c + (frame.b(side) - c) * t for side in ("L", "R")}
        levels[n] = _Level(n=n, apex=apex, b=b_pts)
    levels[0].b = {"L": c, "R": c}

    builder = assembly.Builder(frame, meta, sheet_scale)
    for side in ("L", "R"):
        builder.ray(frame.j(side), MOUNTAIN, f"j_{side}")
        builder.ray(frame.k(side), VALLEY, f"k_{side}")
        builder.ray(frame.ell(side), VALLEY, f"ell_{side}")
        builder.segment(a, frame.b(side), VALLEY, f"AB_{side}")

    def lv_name(base: str, n: int) -> str:
        return base if n == d_levels and base in ("A",) else f"{base}({n})"

    for n in range(1, d_levels):
        lv = levels[n]
        builder.add_points(**{f"A({n})": lv.apex, f"B_L({n})": lv.b["L"], f"B_R({n})": lv.b["R"]})
        for side in ("L", "R"):
            builder.ray(Ray2(lv.apex, frame.ell(side).direction), VALLEY, f"ell_{side}({n})")

    # Lowest gadget: scaled copy of the unique closed-form gadget about C.
    sol = solve_third(spec)
    meta.scalars["psi_1"] = sol.psi_l
    d_pt, e1, g1, p1 = _gadget_core_points(frame, sol.psi_l)
    s1 = frac(1)

    def scale1(p: Point2) -> Point2:
        return c + (p - c) * s1

    d1 = scale1(d_pt)
    e1 = {k: scale1(v) for k, v in e1.items()}
    g1 = {k: scale1(v) for k, v in g1.items()}
    p1 = {k: scale1(v) for k, v in p1.items()}
    lv1 = levels[1]
    lv1.e = e1
    builder.add_points(
        **{
            "D(1)": d1,
            "E_L(1)": e1["L"],
            "E_R(1)": e1["R"],
            "G_L(1)": g1["L"],
            "G_R(1)": g1["R"],
            "P_L(1)": p1["L"],
            "P_R(1)": p1["R"],
        }
    )
    for side in ("L", "R"):
        builder.ray(Ray2(e1[side], frame.ell(side).direction), MOUNTAIN, f"m_{side}(1)")
        builder.segment(lv1.apex, e1[side], MOUNTAIN, f"A(1) E_{side}(1)")
        builder.segment(lv1.b[side], e1[side], VALLEY, f"B_{side}(1) E_{side}(1)")
        builder.segment(lv1.b[side], g1[side], MOUNTAIN, f"B_{side}(1) G_{side}(1)")
        builder.segment(lv1.b[side], p1[side], MOUNTAIN, f"B_{side}(1) P_{side}(1)")
    builder.segment(e1["L"], e1["R"], MOUNTAIN, "E_L(1) E_R(1)")
    builder.segment(g1["L"], g1["R"], VALLEY, "G_L(1) G_R(1)")
    builder.segment(p1["L"], p1["R"], VALLEY, "P_L(1) P_R(1)")

    flat_verts = [
        "E_L(1)", "E_R(1)", "G_L(1)", "G_R(1)", "P_L(1)", "P_R(1)",
    ]

    # Repeating bands above the lowest gadget.
    axis = (a - c).unit() * -1.0  # frame axis direction, apex->C is +x here
    for n in range(2, d_levels + 1):
        lv, below = levels[n], levels[n - 1]
        psi_n = plan.psi_list[n - 2]
        apex_name = "A" if n == d_levels else f"A({n})"
        below_name = f"A({n - 1})"
        p_n, q_n = plan.proportions[n - 1], q[n - 1]

        e_pts = {}
        for side, sgn in (("L", 1.0), ("R", -1.0)):
            mid = midpoint(below.b[side], lv.b[side])
            lv.m_mid[side] = mid
            e_ray_az = sgn * (g / 2.0 + sgn * psi_n) / 2.0
            e_pt = intersect_ray_line(
                Ray2.from_azimuth(lv.apex, e_ray_az), mid, frame.ell(side).direction
            )
            if e_pt is None:
                raise GeometryError(f"E_{side}({n}) construction failed")
            e_pts[side] = e_pt
            builder.ray(Ray2(e_pt, frame.ell(side).direction), MOUNTAIN, f"m_{side}({n})")
            builder.segment(lv.apex, e_pt, MOUNTAIN, f"{apex_name} E_{side}({n})")
            builder.segment(below.apex, e_pt, MOUNTAIN, f"{below_name} E_{side}({n})")
            builder.add_points(**{f"E_{side}({n})": e_pt})
        lv.e = e_pts
        builder.segment(e_pts["L"], e_pts["R"], VALLEY, f"E_L({n}) E_R({n})")

        f_prime = intersect_ray_segment(
            Ray2.from_azimuth(lv.apex, psi_n), e_pts["L"], e_pts["R"]
        )
        if f_prime is None:
            raise GeometryError(f"F'({n}) fell off segment E_L E_R")
        if lv.apex.distance_to(f_prime) >= q_n * u_len - eps:
            raise PatternError(
                f"level {n}: folded pleat images glue (psi bound violated)"
            )
        lv.f_prime = f_prime
        builder.add_points(**{f"F'({n})": f_prime})
        builder.segment(lv.apex, f_prime, MOUNTAIN, f"{apex_name} F'({n})")
        builder.segment(below.apex, f_prime, VALLEY, f"{below_name} F'({n})")

        for side in ("L", "R"):
            k_dir = frame.k(side).direction
            kp_dir = reflect_direction(k_dir, frame.ell(side).direction)
            k_below = Ray2(below.b[side], k_dir)
            k_prime = Ray2(lv.b[side], kp_dir)
            g_point = intersect_ray_segment(k_prime, lv.apex, e_pts[side])
            g_prime = intersect_ray_segment(k_below, below.apex, e_pts[side])
            criterion = g_exists(spec, psi_n, side, p_n, q_n)
            if (g_point is None) != (g_prime is None):
                raise PatternError(
                    f"level {n} side {side}: G and G' existence disagree"
                )
            if (g_point is not None) != criterion:
                meta.warnings.append(
                    f"level {n} side {side}: G criterion disagrees with construction"
                )
            if g_point is None:
                j_pt = intersect_ray_line(k_below, e_pts[side], frame.ell(side).direction)
                if j_pt is None:
                    raise GeometryError(f"J_{side}({n}) construction failed")
                check = intersect_ray_line(k_prime, e_pts[side], frame.ell(side).direction)
                if check is None or not check.close_to(j_pt, 1e-9 * ab):
                    raise PatternError(
                        f"level {n} side {side}: base images fail to meet on the bisector"
                    )
                builder.add_points(**{f"J_{side}({n})": j_pt})
                builder.segment(lv.b[side], j_pt, MOUNTAIN, f"B_{side}({n}) J_{side}({n})")
                builder.segment(below.b[side], j_pt, VALLEY, f"B_{side}({n - 1}) J_{side}({n})")
                meta.branches.append(f"level {n} side {side}: no G (J tuck)")
                flat_verts.append(f"J_{side}({n})")
            else:
                # Reflect both base images across their apex creases; the
                # images must meet at one point on the E-E segment.
                dir1 = reflect_direction(kp_dir, (e_pts[side] - lv.apex).unit())
                dir2 = reflect_direction(k_dir, (e_pts[side] - below.apex).unit())
                ee_dir = (e_pts["R"] - e_pts["L"]).unit()
                m1 = line_intersection(g_point, dir1, e_pts["L"], ee_dir)
                m2 = line_intersection(g_prime, dir2, e_pts["L"], ee_dir)
                if m1 is None or m2 is None:
                    raise GeometryError(f"M_{side}({n}) construction failed")
                if not m1.close_to(m2, 1e-9 * ab):
                    raise PatternError(
                        f"level {n} side {side}: reflected base images do not "
                        f"meet at a common point on E_L E_R"
                    )
                builder.add_points(
                    **{
                        f"G_{side}({n})": g_point,
                        f"G'_{side}({n - 1})": g_prime,
                        f"M_{side}({n})": m1,
                    }
                )
                builder.segment(lv.b[side], g_point, MOUNTAIN, f"B_{side}({n}) G_{side}({n})")
                builder.segment(g_prime, m1, MOUNTAIN, f"G'_{side}({n - 1}) M_{side}({n})")
                builder.segment(below.b[side], g_prime, VALLEY, f"B_{side}({n - 1}) G'_{side}({n - 1})")
                builder.segment(g_point, m1, VALLEY, f"G_{side}({n}) M_{side}({n})")
                meta.branches.append(f"level {n} side {side}: G exists")
                flat_verts += [f"G_{side}({n})", f"G'_{side}({n - 1})", f"M_{side}({n})"]
        flat_verts += [f"E_L({n})", f"E_R({n})", f"F'({n})"]

    # Sub-apexes A(n) and sub-ridge corners B(n) carry the solid angles of
    # the folded stack; only the outermost ridge copies end up locally flat.
    flat_verts += ["B_L", "B_R"]
    meta.flat_vertices = flat_verts
    meta.scalars["psi_list"] = list(plan.psi_list)
    meta.scalars["proportions"] = list(plan.proportions)
    return builder.finish()
