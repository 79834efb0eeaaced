"""Infinite family of prescribed-pleat negative gadgets, one per base angle.

One free parameter per side choice tau: the pattern angle abe at the
ridge copy B_tau toward the chosen point E_tau on the pleat bisector.
The auxiliary arc point D doubles the apex angle toward E_tau; everything
else cascades constructively.  Outside the practical sub-range an extra
tuck (Q/R creases mirrored across B P) keeps the pleat faces legal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern
from .frame import (
    GadgetSpec,
    InfeasibleError,
    PleatFrame,
    build_frame,
    other_side,
    validate,
)
from .geometry import (
    GeometryError,
    Ray2,
    angle_at,
    bisector_ray,
    intersect_ray_segment,
    intersect_rays,
    unit,
)

MERGE_EPS = 1e-9


@dataclass(frozen=True)
class FirstParams:
    tau: str
    abe: float  # pattern angle at B_tau toward E_tau, radians


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    @property
    def empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def contains(self, x: float, eps: float = 1e-12) -> bool:
        lo_ok = x > self.lo + eps if self.lo_open else x >= self.lo - eps
        hi_ok = x < self.hi - eps if self.hi_open else x <= self.hi + eps
        return lo_ok and hi_ok

    def clamp(self, x: float, margin: float = 1e-9) -> float:
        lo = self.lo + (margin if self.lo_open else 0.0)
        hi = self.hi - (margin if self.hi_open else 0.0)
        return min(max(x, lo), hi)


def admissible_range(spec: GadgetSpec, tau: str, practical: bool = False) -> Interval:
    """Allowed values of the free angle; never empty for a valid spec.

    The full range is [pi - beta_tau, pi - beta_tau + gamma/2 + delta_l +
    delta_r] cut to the open window (gamma + delta_l + delta_r, pi).  The
    practical variant tightens both ends so no extra tuck creases appear.
    """
    validate(spec).raise_if_invalid()
    g, ds = spec.gamma, spec.delta_sum
    bt = spec.beta(tau)
    lo, lo_open = math.pi - bt, False
    hi, hi_open = math.pi - bt + g / 2.0 + ds, False
    if practical:
        lo = math.pi - bt + spec.delta(tau)
        hi = min(hi, spec.beta(other_side(tau)) + g + spec.delta(tau))
    if lo <= g + ds:
        lo, lo_open = g + ds, True
    if hi >= math.pi:
        hi, hi_open = math.pi, True
    iv = Interval(lo, hi, lo_open, hi_open)
    if iv.empty:
        raise GeometryError("admissible range empty for a valid spec (bug)")
    return iv


def default_abe(spec: GadgetSpec, tau: str) -> float:
    """Midpoint recommendation (pi + gamma + delta_l + delta_r) / 2, clamped
    into the practical range."""
    target = (math.pi + spec.gamma + spec.delta_sum) / 2.0
    return admissible_range(spec, tau, practical=True).clamp(target)


def first_interference_lengths(spec: GadgetSpec, params: FirstParams) -> tuple[float, float]:
    """(|D G_tau|, |D G_tau'|) by closed form, from the doubled apex angle."""
    frame = build_frame(spec)
    _, _, phi_tau, *_ = _core_points(frame, params)
    bt = spec.beta(params.tau)
    phi_taup = spec.gamma - phi_tau
    on_tau = spec.ab_len / (math.sin(bt) / math.tan(phi_tau / 2.0) - math.cos(bt))
    on_taup = spec.ab_len / (math.sin(bt) / math.tan(phi_taup / 2.0) + math.cos(bt))
    return on_tau, on_taup


def _core_points(frame: PleatFrame, params: FirstParams):
    """E_tau, D and the doubled apex angle phi_tau."""
    spec = frame.spec
    tau = params.tau
    rng = admissible_range(spec, tau)
    if not rng.contains(params.abe):
        raise InfeasibleError(
            f"abe={params.abe:.6g} outside admissible range "
            f"[{rng.lo:.6g}, {rng.hi:.6g}]"
        )
    e_tau = intersect_rays(frame.fan_ray(tau, params.abe), frame.m(tau))
    if e_tau is None:
        raise GeometryError("E_tau construction failed")
    phi_tau = 2.0 * angle_at(frame.a, frame.b(tau), e_tau)
    sign = 1.0 if tau == "L" else -1.0
    b_azimuth = (frame.b(tau) - frame.a).azimuth()
    d_pt = frame.a + unit(b_azimuth - sign * phi_tau) * spec.ab_len
    if phi_tau < -1e-12 or phi_tau > spec.gamma + 1e-9:
        raise GeometryError("arc point left the gap wedge")
    return e_tau, d_pt, phi_tau


def build_first(spec: GadgetSpec, params: FirstParams | None = None, tau: str = "L", sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    rep = validate(spec)
    rep.raise_if_invalid()
    if params is None:
        params = FirstParams(tau, default_abe(spec, tau))
    tau = params.tau
    tau_p = other_side(tau)
    frame = build_frame(spec)
    a, c = frame.a, frame.c
    b_t, b_p = frame.b(tau), frame.b(tau_p)
    abe = params.abe
    g, ds = spec.gamma, spec.delta_sum
    bt, btp = spec.beta(tau), spec.beta(tau_p)
    dt, dtp = spec.delta(tau), spec.delta(tau_p)

    e_tau, d_pt, phi_tau = _core_points(frame, params)

    meta = ConstructionReport(construction="first", tau=tau)
    g_eq_e = abs(abe - (math.pi - bt)) <= MERGE_EPS
    gp_eq_ep = abs(abe - (math.pi - bt + g / 2.0 + ds)) <= MERGE_EPS
    p_eq_e = dt == 0.0
    tuck_tau = abe < math.pi - bt + dt - MERGE_EPS
    tuck_taup = abe > btp + g + dt + MERGE_EPS

    # G_tau at the fixed pattern angle pi - beta_tau on segment A E_tau.
    if g_eq_e:
        g_tau = e_tau
        meta.merges.append("G_tau = E_tau")
    else:
        g_tau = intersect_ray_segment(frame.fan_ray(tau, math.pi - bt), a, e_tau)
        if g_tau is None:
            raise GeometryError("G_tau fell off segment A E_tau")

    # Opposite side: E from the bisector toward D, G along the ray G_tau -> D.
    e_taup = intersect_rays(bisector_ray(a, d_pt, b_p), frame.m(tau_p))
    if e_taup is None:
        raise GeometryError("E_tau' construction failed")
    if gp_eq_ep:
        g_taup = e_taup
        meta.merges.append("G_tau' = E_tau'")
    else:
        g_taup = intersect_ray_segment(Ray2.through(g_tau, d_pt), a, e_taup)
        if g_taup is None:
            raise GeometryError("G_tau' fell off segment A E_tau'")

    # P_tau at delta_tau past E_tau; P_tau' across the frame apex C.
    if p_eq_e:
        p_tau = e_tau
        meta.merges.append("P_tau = E_tau")
    else:
        p_tau = intersect_rays(frame.fan_ray(tau, abe + dt), frame.m(tau))
        if p_tau is None:
            raise GeometryError("P_tau construction failed")
    p_taup = intersect_rays(Ray2.through(p_tau, c), frame.m(tau_p))
    if p_taup is None:
        raise GeometryError("P_tau' construction failed")
    m_taup_dir = frame.ell(tau_p).direction
    if (p_taup - e_taup).dot(m_taup_dir) < -MERGE_EPS * spec.ab_len:
        raise GeometryError("P_tau' landed behind E_tau'")

    meta.scalars.update(
        {
            "abe": abe,
            "phi_tau": phi_tau,
            "gamma": g,
        }
    )
    on_tau, on_taup = first_interference_lengths(spec, params)
    meta.interference = {tau: on_tau, tau_p: on_taup}
    if rep.flat:
        meta.branches.append("flat gadget (alpha = beta_l + beta_r)")

    builder = assembly.Builder(frame, meta, sheet_scale)
    builder.base_net_creases()
    names = {
        "D": d_pt,
        f"E_{tau}": e_tau,
        f"E_{tau_p}": e_taup,
        f"G_{tau}": g_tau,
        f"G_{tau_p}": g_taup,
        f"P_{tau}": p_tau,
        f"P_{tau_p}": p_taup,
    }
    builder.add_points(**names)
    for side, e_pt in ((tau, e_tau), (tau_p, e_taup)):
        builder.ray(Ray2(e_pt, frame.ell(side).direction), MOUNTAIN, f"m_{side}")
        builder.segment(a, e_pt, MOUNTAIN, f"A E_{side}")
    builder.segment(e_tau, e_taup, MOUNTAIN, "E_L E_R")
    builder.segment(g_tau, g_taup, VALLEY, "G_L G_R")
    builder.segment(p_tau, p_taup, VALLEY, "P_L P_R")

    # Side tau creases per the assignment rules.
    if p_eq_e:
        builder.segment(b_t, g_tau, MOUNTAIN, f"B_{tau} G_{tau}")
    else:
        builder.segment(b_t, e_tau, VALLEY, f"B_{tau} E_{tau}")
        builder.segment(b_t, p_tau, MOUNTAIN, f"B_{tau} P_{tau}")
        if not g_eq_e:
            builder.segment(b_t, g_tau, MOUNTAIN, f"B_{tau} G_{tau}")
    # Side tau' creases.
    builder.segment(b_p, p_taup, MOUNTAIN, f"B_{tau_p} P_{tau_p}")
    if not (rep.flat and gp_eq_ep):
        builder.segment(b_p, e_taup, VALLEY, f"B_{tau_p} E_{tau_p}")
    if not gp_eq_ep:
        builder.segment(b_p, g_taup, MOUNTAIN, f"B_{tau_p} G_{tau_p}")

    flat_verts = [f"B_{tau}", f"P_{tau_p}"]
    if not g_eq_e:
        flat_verts.append(f"E_{tau}")
        if not p_eq_e:
            flat_verts.append(f"P_{tau}")
        if not (g_tau.close_to(e_tau, MERGE_EPS)):
            flat_verts.append(f"G_{tau}")
    if not gp_eq_ep:
        flat_verts += [f"E_{tau_p}", f"G_{tau_p}"]
    elif rep.flat:
        flat_verts.append(f"E_{tau_p}")
    if rep.flat:
        flat_verts.append(f"B_{tau_p}")

    # Tuck creases: reflected base image and its mirror across B P.
    if tuck_tau:
        meta.branches.append("tuck on side tau (abe < pi - beta_tau + delta_tau)")
        q_tau = intersect_rays(
            frame.fan_ray(tau, math.pi + 2.0 * dt - bt), frame.m(tau)
        )
        if q_tau is None:
            raise GeometryError("Q_tau construction failed")
        r_tau = intersect_ray_segment(
            frame.fan_ray(tau, 2.0 * abe + bt - math.pi), e_tau, p_tau
        )
        if r_tau is None:
            raise GeometryError("R_tau fell off segment E_tau P_tau")
        builder.add_points(**{f"Q_{tau}": q_tau, f"R_{tau}": r_tau})
        builder.segment(b_t, q_tau, MOUNTAIN, f"B_{tau} Q_{tau}")
        builder.segment(c, r_tau, MOUNTAIN, f"C R_{tau}")
        builder.segment(c, q_tau, VALLEY, f"C Q_{tau}")
        if not r_tau.close_to(e_tau, MERGE_EPS):
            builder.segment(b_t, r_tau, VALLEY, f"B_{tau} R_{tau}")
        else:
            meta.merges.append("R_tau = E_tau")
        flat_verts.append(f"Q_{tau}")
        if not r_tau.close_to(e_tau, MERGE_EPS):
            flat_verts.append(f"R_{tau}")
    if tuck_taup:
        meta.branches.append("tuck on side tau' (abe > beta_tau' + gamma + delta_tau)")
        q_taup = intersect_rays(
            frame.fan_ray(tau_p, math.pi + 2.0 * dtp - btp), frame.m(tau_p)
        )
        if q_taup is None:
            raise GeometryError("Q_tau' construction failed")
        # Mirror of the tuck ray across B P_tau': R' sits between E' and P'.
        fan_r = 2.0 * frame.fan_of(tau_p, p_taup) - frame.fan_of(tau_p, q_taup)
        r_taup = intersect_ray_segment(
            frame.fan_ray(tau_p, fan_r), e_taup, p_taup
        )
        if r_taup is None:
            raise GeometryError("R_tau' fell off segment E_tau' P_tau'")
        builder.add_points(**{f"Q_{tau_p}": q_taup, f"R_{tau_p}": r_taup})
        builder.segment(b_p, q_taup, MOUNTAIN, f"B_{tau_p} Q_{tau_p}")
        builder.segment(c, r_taup, MOUNTAIN, f"C R_{tau_p}")
        builder.segment(b_p, r_taup, VALLEY, f"B_{tau_p} R_{tau_p}")
        builder.segment(c, q_taup, VALLEY, f"C Q_{tau_p}")
        flat_verts += [f"Q_{tau_p}", f"R_{tau_p}"]
    meta.flat_vertices = flat_verts

    # Proven angle relations, evaluated against the construction points.
    # Folded-state angle at the far ridge copy: alternating pattern combo.
    meta.add_identity(
        "k'B'G' (folded) = pi - alpha",
        [
            (1.0, ("angle", f"B_{tau_p}", f"k_{tau_p}_dir", f"ell_{tau_p}_dir")),
            (-1.0, ("angle", f"B_{tau_p}", f"P_{tau_p}", f"ell_{tau_p}_dir")),
            (1.0, ("angle", f"B_{tau_p}", f"E_{tau_p}", f"P_{tau_p}")),
            (-1.0, ("angle", f"B_{tau_p}", f"E_{tau_p}", f"G_{tau_p}")),
            (-1.0, ("const", math.pi - spec.alpha)),
        ],
    )
    meta.add_identity(
        "ADG' = beta_tau",
        [(1.0, ("angle", "D", "A", f"G_{tau_p}")), (-1.0, ("const", bt))],
    )
    meta.add_identity(
        "AB'G' = beta_tau",
        [(1.0, ("angle", f"B_{tau_p}", "A", f"G_{tau_p}")), (-1.0, ("const", bt))],
    )
    meta.add_identity(
        "EBG + E'B'G' = gamma/2 + delta_l + delta_r",
        [
            (1.0, ("angle", f"B_{tau}", f"E_{tau}", f"G_{tau}")),
            (1.0, ("angle", f"B_{tau_p}", f"E_{tau_p}", f"G_{tau_p}")),
            (-1.0, ("const", g / 2.0 + ds)),
        ],
    )
    meta.add_identity(
        "E'B'P' = gamma/2 + delta_tau'",
        [
            (1.0, ("angle", f"B_{tau_p}", f"E_{tau_p}", f"P_{tau_p}")),
            (-1.0, ("const", g / 2.0 + dtp)),
        ],
    )
    meta.add_identity(
        "E'P'P = abe - (gamma + delta_l + delta_r)",
        [
            (1.0, ("angle", f"P_{tau_p}", f"E_{tau_p}", f"P_{tau}")),
            (-1.0, ("const", abe - (g + ds))),
        ],
    )
    if not p_eq_e:
        meta.add_identity(
            "EPP' = pi - abe",
            [
                (1.0, ("angle", f"P_{tau}", f"E_{tau}", f"P_{tau_p}")),
                (-1.0, ("const", math.pi - abe)),
            ],
        )
    return builder.finish()
