import math

import pytest

from gadget_forge.cheng import build_cheng, cheng_extension_lengths
from gadget_forge.cp import assert_identities, check_planarity, flat_vertex_residuals
from gadget_forge.frame import GadgetSpec, ValidationError, validate
from tests.conftest import CUBE, random_valid_spec

# Shallow-base spec exercising the branch with the shared start point on AP
# (requires beta_tau <= gamma/2, impossible for nearly symmetric specs).
SHALLOW = GadgetSpec(math.radians(105), math.radians(10), math.radians(100))


def test_cube_extension_lengths():
    l, r = cheng_extension_lengths(CUBE, "L")
    assert l == pytest.approx(0.5, abs=1e-12)
    assert r == pytest.approx(0.5, abs=1e-12)


def test_shallow_branch_extension():
    assert validate(SHALLOW).ok
    l, r = cheng_extension_lengths(SHALLOW, "L")
    want = math.sin(math.radians(72.5)) / math.sin(math.radians(82.5))
    assert l == pytest.approx(want, abs=1e-12)
    assert r == pytest.approx(want, abs=1e-12)


def test_branch_seam_continuity():
    # beta_l crosses gamma/2 + deltas: both formulas agree at the seam.
    g = math.radians(100)
    bl, br = math.radians(50), math.radians(120)
    alpha = 2 * math.pi - g - bl - br
    lo = cheng_extension_lengths(GadgetSpec(alpha, bl - 1e-9, br), "L")
    hi = cheng_extension_lengths(GadgetSpec(alpha, bl + 1e-9, br), "L")
    assert lo[0] == pytest.approx(hi[0], abs=1e-7)
    assert lo[1] == pytest.approx(hi[1], abs=1e-7)


def test_cube_pattern():
    cp = build_cheng(CUBE, "L")
    assert check_planarity(cp) == []
    assert max(flat_vertex_residuals(cp).values()) < 1e-9
    assert all(c.residual < 1e-9 for c in assert_identities(cp))
    assert "beta_tau > gamma/2 + delta_l + delta_r (B' on m_tau)" in cp.meta.branches
    d = cp.meta.points
    assert d["B'_tau"].distance_to(d["B_L"]) == pytest.approx(0.5, abs=1e-9)


def test_shallow_pattern():
    cp = build_cheng(SHALLOW, "L")
    assert cp.meta.branches == ["beta_tau <= gamma/2 + delta_l + delta_r (B' on AP)"]
    assert check_planarity(cp) == []
    assert max(flat_vertex_residuals(cp).values()) < 1e-9
    assert all(c.residual < 1e-9 for c in assert_identities(cp))
    # Shared start point in this branch.
    d = cp.meta.points
    assert d["B'_tau"].close_to(d["B'_taup"], 1e-12)


def test_invalid_spec_propagates():
    with pytest.raises(ValidationError):
        build_cheng(GadgetSpec(math.pi / 2, math.pi / 4, math.pi / 4), "L")


def test_opposite_angle_is_beta_tau(rng):
    for _ in range(100):
        spec = random_valid_spec(rng)
        if spec.is_flat:
            continue
        for tau in ("L", "R"):
            cp = build_cheng(spec, tau)
            names = {c.name: c.residual for c in assert_identities(cp)}
            assert names["AB'B' = beta_tau"] < 1e-9
            assert names["P: APm_R - CPm_R + CPm_L - APm_L"] < 1e-9


def test_lengths_match_measured(rng):
    for _ in range(120):
        spec = random_valid_spec(rng)
        if spec.is_flat:
            continue
        tau = rng.choice("LR")
        cp = build_cheng(spec, tau)
        assert check_planarity(cp) == []
        assert max(flat_vertex_residuals(cp).values()) < 1e-9
        el, er = cheng_extension_lengths(spec, tau)
        d = cp.meta.points
        b_l = d["B'_tau"] if tau == "L" else d["B'_taup"]
        b_r = d["B'_taup"] if tau == "L" else d["B'_tau"]
        assert b_l.distance_to(d["B_L"]) == pytest.approx(el, abs=1e-9)
        assert b_r.distance_to(d["B_R"]) == pytest.approx(er, abs=1e-9)


def test_delta_zero_ap_pc_collinear(rng):
    for _ in range(40):
        spec = random_valid_spec(rng, deltas=False)
        if spec.is_flat:
            continue
        cp = build_cheng(spec, "L")
        names = {c.name: c.residual for c in assert_identities(cp)}
        assert names["APC collinear (delta = 0)"] < 1e-9
