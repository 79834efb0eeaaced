"""Pairwise interference between adjacent gadgets sharing a side face.

The back-side flap of each gadget reaches along the shared bottom edge;
if the extended flap bases meet inside the shared development the
gadgets collide.  Formulas assume both neighbors use the unique
(closed-form) construction; the mixed positive/negative prism scenario
is reproduced as a fixed report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .frame import GadgetSpec, derive_angles, validate
from .third import ThirdSolution, solve_third, third_interference_lengths


@dataclass(frozen=True)
class SolvedGadget:
    spec: GadgetSpec
    solution: ThirdSolution

    @classmethod
    def solve(cls, spec: GadgetSpec) -> "SolvedGadget":
        validate(spec).raise_if_invalid()
        return cls(spec, solve_third(spec))


@dataclass(frozen=True)
class AdjacencyCase:
    """Left and right gadget sharing the side face between them."""

    left: SolvedGadget
    right: SolvedGadget
    shared_len: float

    @classmethod
    def of(cls, left: GadgetSpec, right: GadgetSpec, shared_len: float) -> "AdjacencyCase":
        return cls(SolvedGadget.solve(left), SolvedGadget.solve(right), shared_len)


def flap_angles(case: AdjacencyCase) -> tuple[float, float]:
    """Bottom-edge flap angles of the left gadget's right flap and the
    right gadget's left flap."""
    l, r = case.left, case.right
    dl = derive_angles(l.spec)
    dr = derive_angles(r.spec)
    theta_1r = l.spec.beta_r + dl.gamma_r - l.solution.rho_l - math.pi / 2.0
    theta_2l = r.spec.beta_l + dr.gamma_l + r.solution.rho_l - math.pi / 2.0
    return theta_1r, theta_2l


def min_shared_length(case: AdjacencyCase) -> float:
    """Smallest shared-edge length with no flap collision."""
    theta_1r, theta_2l = flap_angles(case)
    if theta_1r + theta_2l >= math.pi:
        return 0.0
    _, k1r = third_interference_lengths(case.left.spec, case.left.solution)
    k2l, _ = third_interference_lengths(case.right.spec, case.right.solution)
    return min(k1r * math.sin(theta_1r), k2l * math.sin(theta_2l)) * (
        1.0 / math.tan(theta_1r) + 1.0 / math.tan(theta_2l)
    )


def apex_floor(case: AdjacencyCase) -> Optional[float]:
    """Shared-edge length forced by the degenerate top edge (coincident
    apexes), when the base angles allow one; None otherwise."""
    b1l = case.left.spec.beta_l
    b2r = case.right.spec.beta_r
    if b1l + b2r < math.pi:
        return None
    apex = b1l + b2r - math.pi
    if math.sin(b2r) < 1e-12 or apex <= 0.0:
        return 0.0
    return case.left.spec.ab_len * math.sin(apex) / math.sin(b2r)


@dataclass(frozen=True)
class InterferenceReport:
    theta_1r: float
    theta_2l: float
    k_1r: float
    k_2l: float
    min_length: float
    apex_floor: Optional[float]
    shared_len: float

    @property
    def ok(self) -> bool:
        # Equality counts as interference free; allow rounding slack.
        tol = 1e-12 * max(1.0, abs(self.min_length))
        return self.shared_len >= self.min_length - tol

    def to_dict(self) -> dict:
        return {
            "theta_1r": self.theta_1r,
            "theta_2l": self.theta_2l,
            "k_1r": self.k_1r,
            "k_2l": self.k_2l,
            "min_length": self.min_length,
            "apex_floor": self.apex_floor,
            "shared_len": self.shared_len,
            "verdict": "OK" if self.ok else "COLLIDE",
        }


def analyze(case: AdjacencyCase) -> InterferenceReport:
    theta_1r, theta_2l = flap_angles(case)
    _, k1r = third_interference_lengths(case.left.spec, case.left.solution)
    k2l, _ = third_interference_lengths(case.right.spec, case.right.solution)
    return InterferenceReport(
        theta_1r=theta_1r,
        theta_2l=theta_2l,
        k_1r=k1r,
        k_2l=k2l,
        min_length=min_shared_length(case),
        apex_floor=apex_floor(case),
        shared_len=case.shared_len,
    )


def flap_triangles_overlap(case: AdjacencyCase) -> bool:
    """Constructive overlap oracle: lay both flap reach-triangles along the
    shared edge and test whether their interiors intersect.

    Each flap claims the triangle over the bottom edge with base length
    K sin(theta)/tan + ... equivalently apex at distance K sin(theta)
    above the edge and base angle theta at its own corner.
    """
    theta_1r, theta_2l = flap_angles(case)
    if theta_1r <= 0.0 or theta_2l <= 0.0:
        return False
    _, k1r = third_interference_lengths(case.left.spec, case.left.solution)
    k2l, _ = third_interference_lengths(case.right.spec, case.right.solution)
    d = case.shared_len
    if theta_1r + theta_2l >= math.pi:
        return d < 0.0  # rays diverge; never overlap for a positive edge
    # Left flap edge: from x=0 at angle theta_1r; right flap edge: from
    # x=d at angle pi - theta_2l.  They meet at height h.
    h_meet = d / (1.0 / math.tan(theta_1r) + 1.0 / math.tan(theta_2l))
    h1 = k1r * math.sin(theta_1r)
    h2 = k2l * math.sin(theta_2l)
    return h_meet < min(h1, h2)


def prism_example_report() -> dict:
    """Fixed mixed positive/negative prism scenario.

    Two equilateral-apex gadgets with right base angles share a square
    development; all four stated collision thresholds coincide at the
    flap base length of the negative gadget.
    """
    spec = GadgetSpec(math.pi / 3.0, math.pi / 2.0, math.pi / 2.0)
    k_l, k_r = third_interference_lengths(spec)
    threshold = k_l  # symmetric: ab * tan(gamma/4) = 1/sqrt(3)
    conditions = [
        ("positive flap kite vs opposite apex", threshold),
        ("negative flap kite vs adjacent top edge", threshold),
        ("left top edge reflected across right pleat vs negative flap", threshold),
        ("right top edge reflected across left pleat vs negative flap", threshold),
    ]
    return {
        "alpha": spec.alpha,
        "beta": math.pi / 2.0,
        "gamma": spec.gamma,
        "threshold": threshold,
        "conditions": conditions,
        "square_net_ok": 1.0 >= threshold,
    }
