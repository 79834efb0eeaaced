"""Crease-pattern generation and verification for negative 3D
origami-extrusion gadgets."""

from .cheng import build_cheng, cheng_extension_lengths
from .cp import (
    ConstructionReport,
    Crease,
    CreasePattern,
    assert_identities,
    check_planarity,
    kawasaki_residual,
)
from .division import DivisionPlan, build_division, psi_avoiding_G, validate_plan
from .first import FirstParams, admissible_range, build_first, first_interference_lengths
from .fold_io import ExportOptions, export_fold, parse_fold
from .frame import (
    DerivedAngles,
    GadgetSpec,
    InfeasibleError,
    PleatFrame,
    UnsupportedConstructionError,
    ValidationError,
    build_frame,
    derive_angles,
    rho_from_psi,
    validate,
)
from .interference import AdjacencyCase, analyze, flap_angles, min_shared_length, prism_example_report
from .onepleat import build_onepleat, onepleat_extension_length
from .second import build_second, compute_theta
from .svg_io import export_svg
from .third import (
    ThirdSolution,
    bisect_phi,
    build_third,
    phi,
    solve_third,
    third_interference_lengths,
)

__version__ = "0.1.0"
