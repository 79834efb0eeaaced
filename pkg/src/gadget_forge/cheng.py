"""Negative gadget with prescribed pleats through the frame apex C.

The base of the chosen side tau is extended backward until it meets the
polygonal chain A-P-m_tau.  Where it lands selects the branch: on the
segment AP (shallow beta_tau) the opposite starting point coincides; on
the bisector ray beyond P the opposite point comes from reflecting the
extension across the P-C segment.
"""

from __future__ import annotations

import math

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern
from .frame import (
    GadgetSpec,
    build_frame,
    other_side,
    validate,
)
from .geometry import (
    GeometryError,
    Ray2,
    intersect_ray_segment,
    intersect_rays,
    reflect_across,
)

# Flag patterns whose branch point sits this close to P (reflection noise).
NEAR_P_FLAG = 1e-6


def cheng_extension_lengths(spec: GadgetSpec, tau: str) -> tuple[float, float]:
    """Backward base extensions (|B_L B'_L|, |B_R B'_R|) by closed form."""
    validate(spec).raise_if_invalid()
    g = spec.gamma
    bt = spec.beta(tau)
    if bt <= g / 2.0 + spec.delta_sum:
        both = math.sin(g / 2.0) / math.sin(bt + g / 2.0) * spec.ab_len
        return both, both
    out = []
    for side in ("L", "R"):
        d_s = spec.delta(side)
        d_o = spec.delta(other_side(side))
        val = (math.cos(d_o) - math.cos(g + d_o)) / (
            2.0 * math.sin(g + spec.delta_sum) * math.sin(bt - d_s)
        ) * spec.ab_len
        out.append(val)
    return out[0], out[1]


def build_cheng(spec: GadgetSpec, tau: str, sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    rep = validate(spec)
    rep.raise_if_invalid()
    if spec.is_flat:
        from .frame import UnsupportedConstructionError

        raise UnsupportedConstructionError(
            "prescribed-pleat extension construction does not cover the flat case"
        )
    tau_p = other_side(tau)
    frame = build_frame(spec)
    a, c, p = frame.a, frame.c, frame.p

    meta = ConstructionReport(construction="cheng", tau=tau)
    shallow = spec.beta(tau) <= spec.gamma / 2.0 + spec.delta_sum
    back = Ray2(frame.b(tau), frame.k(tau).direction * -1.0)
    if shallow:
        meta.branches.append("beta_tau <= gamma/2 + delta_l + delta_r (B' on AP)")
        b_prime_tau = intersect_ray_segment(back, a, p)
        if b_prime_tau is None:
            raise GeometryError("backward base extension misses segment AP")
        b_prime_taup = b_prime_tau
    else:
        meta.branches.append("beta_tau > gamma/2 + delta_l + delta_r (B' on m_tau)")
        b_prime_tau = intersect_rays(back, frame.m(tau))
        if b_prime_tau is None:
            raise GeometryError("backward base extension misses the pleat bisector")
        if b_prime_tau.distance_to(p) < NEAR_P_FLAG * spec.ab_len:
            meta.warnings.append("B'_tau within 1e-6 ridge lengths of P; reflection ill-conditioned")
        mirrored = reflect_across(b_prime_tau, p, c)
        b_prime_taup = intersect_rays(Ray2.through(c, mirrored), frame.m(tau_p))
        if b_prime_taup is None:
            raise GeometryError("reflected extension misses the opposite bisector")

    # Tuck point on the opposite pleat: ray from B_tau' parallel to AP.
    q_taup = intersect_rays(Ray2(frame.b(tau_p), (p - a).unit()), frame.m(tau_p))
    if q_taup is None:
        raise GeometryError("parallel-to-AP ray misses the opposite bisector")

    ext_l, ext_r = cheng_extension_lengths(spec, tau)
    meta.scalars.update(
        {
            "extension_L": ext_l,
            "extension_R": ext_r,
            "interference_tau_prime": max(ext_l, ext_r),
        }
    )
    meta.interference = {tau_p: max(ext_l, ext_r), tau: 0.0}

    builder = assembly.Builder(frame, meta, sheet_scale)
    builder.add_points(**{"B'_tau": b_prime_tau, "B'_taup": b_prime_taup, "Q_taup": q_taup})
    for side in ("L", "R"):
        builder.ray(frame.j(side), MOUNTAIN, f"j_{side}")
        builder.ray(frame.m(side), MOUNTAIN, f"m_{side}")
        builder.ray(frame.ell_prime(side), VALLEY, f"ellp_{side}")
    builder.segment(a, p, MOUNTAIN, "AP")
    builder.segment(c, p, VALLEY, "CP")
    builder.ray(Ray2(b_prime_tau, frame.k(tau).direction), VALLEY, f"k_{tau}")
    builder.ray(frame.k(tau_p), VALLEY, f"k_{tau_p}")
    builder.segment(frame.b(tau_p), b_prime_taup, MOUNTAIN, f"B_{tau_p} B'_{tau_p}")
    builder.segment(c, q_taup, MOUNTAIN, f"C Q_{tau_p}")
    builder.segment(frame.b(tau_p), q_taup, VALLEY, f"B_{tau_p} Q_{tau_p}")
    if not shallow:
        builder.segment(b_prime_tau, c, MOUNTAIN, f"B'_{tau} C")
        builder.segment(b_prime_taup, c, VALLEY, f"B'_{tau_p} C")

    meta.flat_vertices = ["P", "C", "Q_taup"]
    if not shallow:
        meta.flat_vertices += ["B'_tau", "B'_taup"]

    # Four-crease balance at P (the pleat bisectors against AP and CP).
    meta.add_identity(
        "P: APm_R - CPm_R + CPm_L - APm_L",
        [
            (1.0, ("angle", "P", "A", "m_R_dir")),
            (-1.0, ("angle", "P", "C", "m_R_dir")),
            (1.0, ("angle", "P", "C", "m_L_dir")),
            (-1.0, ("angle", "P", "A", "m_L_dir")),
        ],
    )
    # Pattern angle at the opposite ridge copy equals beta_tau.
    meta.add_identity(
        "AB'B' = beta_tau",
        [
            (1.0, ("angle", f"B_{tau_p}", "A", "B'_taup")),
            (-1.0, ("const", spec.beta(tau))),
        ],
    )
    if shallow:
        meta.add_identity(
            "C balance: PCQ' + l'Cl' = pi",
            [
                (1.0, ("angle", "C", "P", "Q_taup")),
                (1.0, ("angle", "C", "ellp_L_dir", "ellp_R_dir")),
                (-1.0, ("const", math.pi)),
            ],
        )
        meta.add_identity(
            "C balance: Q'Cl' + PCl' = pi",
            [
                (1.0, ("angle", "C", "Q_taup", f"ellp_{tau_p}_dir")),
                (1.0, ("angle", "C", "P", f"ellp_{tau}_dir")),
                (-1.0, ("const", math.pi)),
            ],
        )
    else:
        meta.add_identity(
            "C balance: PCB' + B'CQ' + l'Cl' = pi",
            [
                (1.0, ("angle", "C", "P", "B'_tau")),
                (1.0, ("angle", "C", "B'_taup", "Q_taup")),
                (1.0, ("angle", "C", "ellp_L_dir", "ellp_R_dir")),
                (-1.0, ("const", math.pi)),
            ],
        )
        meta.add_identity(
            "C balance: PCB'' + Q'Cl' + B'Cl' = pi",
            [
                (1.0, ("angle", "C", "P", "B'_taup")),
                (1.0, ("angle", "C", "Q_taup", f"ellp_{tau_p}_dir")),
                (1.0, ("angle", "C", "B'_tau", f"ellp_{tau}_dir")),
                (-1.0, ("const", math.pi)),
            ],
        )
    if spec.delta_sum == 0.0:
        # Original construction's special case: A, P, C collinear.
        meta.add_identity(
            "APC collinear (delta = 0)",
            [(1.0, ("angle", "P", "A", "C")), (-1.0, ("const", math.pi))],
        )
    return builder.finish()
