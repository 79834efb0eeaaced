import math

import pytest

from gadget_forge.cp import assert_identities, check_planarity, flat_vertex_residuals, kawasaki_residual
from gadget_forge.frame import GadgetSpec, derive_angles, validate
from gadget_forge.geometry import Point2
from gadget_forge.third import (
    bisect_phi,
    build_third,
    phi,
    phi_endpoint_closed_forms,
    phi_sign_changes,
    ridge_alignment_residual,
    rho_interval,
    solve_third,
    third_interference_lengths,
)
from tests.conftest import CUBE, WIDE, random_flat_spec, random_valid_spec


def test_cube_solution_is_zero():
    sol = solve_third(CUBE)
    assert sol.rho_l == pytest.approx(0.0, abs=1e-15)
    assert sol.psi_l == pytest.approx(0.0, abs=1e-15)
    assert sol.w == pytest.approx(0.0, abs=1e-15)


def test_wide_solution_half_beta_difference():
    # beta_l + beta_r = pi, delta = 0: rho is half the base-angle gap.
    sol = solve_third(WIDE)
    assert sol.rho_l == pytest.approx(math.radians(10), abs=1e-12)
    # psi = asin(r sin rho) - rho; frozen value.
    assert math.degrees(sol.psi_l) == pytest.approx(1.566880182277597, abs=1e-9)


def test_phi_cube_endpoints():
    lo, hi = rho_interval(CUBE)
    clo, chi = phi_endpoint_closed_forms(CUBE)
    assert chi == pytest.approx(math.sqrt(2), abs=1e-9)
    assert phi(hi, CUBE) == pytest.approx(chi, abs=1e-9)
    assert phi(lo, CUBE) == pytest.approx(clo, abs=1e-9)
    assert phi(0.0, CUBE) == pytest.approx(0.0, abs=1e-15)


def test_phi_domain_error():
    from gadget_forge.frame import InfeasibleError

    lo, hi = rho_interval(CUBE)
    with pytest.raises(InfeasibleError):
        phi(hi + 1e-6, CUBE)


def test_phi_antisymmetry_under_side_swap(rng):
    for _ in range(200):
        spec = random_valid_spec(rng)
        swapped = GadgetSpec(spec.alpha, spec.beta_r, spec.beta_l, spec.delta_r, spec.delta_l)
        lo, hi = phi_endpoint_closed_forms(spec)
        lo_s, hi_s = phi_endpoint_closed_forms(swapped)
        assert lo == pytest.approx(-hi_s, abs=1e-9 * max(1.0, abs(hi_s)))
        assert hi == pytest.approx(-lo_s, abs=1e-9 * max(1.0, abs(lo_s)))


def test_bisection_agrees_with_closed_form(rng):
    for _ in range(500):
        spec = random_valid_spec(rng)
        sol = solve_third(spec)
        assert abs(sol.rho_l - bisect_phi(spec)) < 1e-10
        assert phi_sign_changes(spec) == 1
        assert sol.v1 - sol.r * sol.v2 > 0.0


def test_ridge_alignment_residual(rng):
    for _ in range(500):
        spec = random_valid_spec(rng)
        assert ridge_alignment_residual(spec) < 1e-9


def test_symmetric_specs(rng):
    for _ in range(200):
        b = rng.uniform(0.2, math.pi - 0.2)
        a = rng.uniform(0.1, math.pi - 0.1)
        d = rng.uniform(0.0, min(b, math.pi / 2) * 0.9)
        spec = GadgetSpec(a, b, b, d, d)
        if not validate(spec).ok:
            continue
        sol = solve_third(spec)
        assert abs(sol.rho_l) < 1e-12
        assert abs(sol.psi_l) < 1e-12
        kl, kr = third_interference_lengths(spec, sol)
        want = spec.ab_len * math.tan(spec.gamma / 4.0)
        assert kl == pytest.approx(want, abs=1e-10)
        assert kr == pytest.approx(want, abs=1e-10)


def test_cube_pattern_coordinates():
    cp = build_third(CUBE)
    d = cp.meta.points
    assert d["D"].close_to(Point2(1.0, 0.0), 1e-9)
    assert d["E_L"].close_to(Point2(1.2071067811865475, 0.5), 1e-9)
    assert d["G_L"].close_to(Point2(1.0, 0.41421356237309503), 1e-9)
    assert d["P_L"].close_to(Point2(1.4142135623730951, 0.7071067811865476), 1e-9)
    assert d["E_R"].close_to(Point2(1.2071067811865475, -0.5), 1e-9)
    assert check_planarity(cp) == []


def test_pattern_properties_random(rng):
    for _ in range(250):
        spec = random_valid_spec(rng)
        cp = build_third(spec)
        assert check_planarity(cp) == []
        assert max(flat_vertex_residuals(cp).values()) < 1e-9
        for chk in assert_identities(cp):
            assert chk.residual < 1e-9, (spec, chk)
        kl, kr = third_interference_lengths(spec)
        d = cp.meta.points
        assert d["D"].distance_to(d["G_L"]) == pytest.approx(kl, abs=1e-9)
        assert d["D"].distance_to(d["G_R"]) == pytest.approx(kr, abs=1e-9)


def test_interference_denominators_positive(rng):
    for _ in range(300):
        spec = random_valid_spec(rng)
        kl, kr = third_interference_lengths(spec)
        assert kl > 0.0 and kr > 0.0


def test_flat_boundary(rng):
    for _ in range(60):
        spec = random_flat_spec(rng)
        d = derive_angles(spec)
        sol = solve_third(spec)
        assert -d.gamma_r < sol.psi_l < d.gamma_l
        cp = build_third(spec)
        assert check_planarity(cp) == []
        # Flat case declares the ridge copies locally flat as well.
        assert "B_L" in cp.meta.flat_vertices
        assert max(flat_vertex_residuals(cp).values()) < 1e-9
        for chk in assert_identities(cp):
            assert chk.residual < 1e-9


def test_ridge_vertex_not_flat_without_flat_case():
    cp = build_third(CUBE)
    assert "B_L" not in cp.meta.flat_vertices
    assert kawasaki_residual(cp, cp.meta.points["B_L"]) == pytest.approx(math.pi / 4, abs=1e-9)
