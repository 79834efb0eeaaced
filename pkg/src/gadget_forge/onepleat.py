"""Negative gadget with a single simple outgoing pleat.

The gap wedge is bisected from the apex; the base of the chosen side is
extended back to a point on the bisector, and the opposite ridge copy
sends out a ray parallel to the bisector.  Pleat rotations are not part
of this construction, so any nonzero delta is rejected.
"""

from __future__ import annotations

import math

from . import assembly
from .cp import MOUNTAIN, VALLEY, ConstructionReport, CreasePattern
from .frame import (
    GadgetSpec,
    UnsupportedConstructionError,
    build_frame,
    other_side,
    validate,
)
from .geometry import EPS_ANG, GeometryError, Ray2, intersect_rays


def _require_supported(spec: GadgetSpec) -> None:
    validate(spec).raise_if_invalid()
    if spec.delta_l != 0.0 or spec.delta_r != 0.0:
        raise UnsupportedConstructionError(
            "one-pleat construction requires delta_l = delta_r = 0"
        )
    if spec.is_flat:
        raise UnsupportedConstructionError(
            "one-pleat construction does not cover the flat case"
        )


def onepleat_extension_length(spec: GadgetSpec, tau: str) -> float:
    """Backward extension of the base on side tau: sin(g/2)/sin(beta+g/2) * ab."""
    _require_supported(spec)
    g2 = spec.gamma / 2.0
    den = math.sin(spec.beta(tau) + g2)
    if den <= math.sin(EPS_ANG):
        raise UnsupportedConstructionError(
            "beta_tau + gamma/2 too close to pi; extension diverges"
        )
    return math.sin(g2) / den * spec.ab_len


def default_tau(spec: GadgetSpec) -> str:
    """Side whose extension is shorter (less interference on the other side)."""
    lengths = {side: onepleat_extension_length(spec, side) for side in ("L", "R")}
    return min(lengths, key=lengths.get)


def build_onepleat(spec: GadgetSpec, tau: str | None = None, sheet_scale: float = assembly.DEFAULT_SHEET_SCALE) -> CreasePattern:
    _require_supported(spec)
    if tau is None:
        tau = default_tau(spec)
    tau_p = other_side(tau)
    frame = build_frame(spec)

    # Gap bisector from A; with delta = 0 it runs straight toward C.
    b_ray = Ray2.through(frame.a, frame.c)
    back = Ray2(frame.b(tau), frame.k(tau).direction * -1.0)
    b_prime = intersect_rays(back, b_ray)
    if b_prime is None:
        raise GeometryError("backward base extension misses the gap bisector")

    meta = ConstructionReport(construction="onepleat", tau=tau)
    ext = onepleat_extension_length(spec, tau)
    meta.scalars["extension_length"] = ext
    meta.scalars["gamma"] = spec.gamma
    meta.branches.append(f"tau={tau}")
    meta.warnings.append("bisector creased on its full ray, past B'_tau")

    builder = assembly.Builder(frame, meta, sheet_scale)
    builder.add_points(**{"B'": b_prime})
    for side in ("L", "R"):
        builder.ray(frame.j(side), MOUNTAIN, f"j_{side}")
    builder.ray(b_ray, MOUNTAIN, "b")
    # Base on side tau starts from B'_tau; the other base is untouched.
    builder.ray(Ray2(b_prime, frame.k(tau).direction), VALLEY, f"k_{tau}")
    builder.ray(frame.k(tau_p), VALLEY, f"k_{tau_p}")
    builder.ray(Ray2(frame.b(tau_p), b_ray.direction), VALLEY, f"c_{tau_p}")
    builder.segment(frame.a, frame.b(tau_p), VALLEY, f"AB_{tau_p}")
    builder.segment(b_prime, frame.b(tau_p), MOUNTAIN, f"B' B_{tau_p}")

    meta.flat_vertices = ["B'"]
    # Locally flat at B': the base and flap-edge creases sit symmetrically
    # about the bisector.
    meta.add_identity(
        "B' symmetric about b",
        [
            (1.0, ("angle", "B'", f"k_{tau}_dir@B'", "b_dir@B'")),
            (-1.0, ("angle", "B'", f"B_{tau_p}", "b_dir@B'")),
        ],
    )
    ab = spec.ab_len
    builder.add_points(
        **{
            f"k_{tau}_dir@B'": b_prime + frame.k(tau).direction * ab,
            "b_dir@B'": b_prime + b_ray.direction * ab,
        }
    )
    return builder.finish()
