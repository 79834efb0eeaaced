import math

import pytest

from gadget_forge.frame import GadgetSpec
from gadget_forge.interference import (
    AdjacencyCase,
    SolvedGadget,
    analyze,
    apex_floor,
    flap_angles,
    flap_triangles_overlap,
    min_shared_length,
    prism_example_report,
)
from gadget_forge.third import ThirdSolution, solve_third
from tests.conftest import CUBE, WIDE, random_valid_spec


def cube_pair(shared=1.0):
    return AdjacencyCase.of(CUBE, CUBE, shared)


def test_cube_flap_angles():
    t1, t2 = flap_angles(cube_pair())
    assert t1 == pytest.approx(math.pi / 4, abs=1e-12)
    assert t2 == pytest.approx(math.pi / 4, abs=1e-12)


def test_wide_left_flap_angle():
    case = AdjacencyCase.of(WIDE, CUBE, 1.0)
    assert flap_angles(case)[0] == pytest.approx(math.radians(30), abs=1e-9)


def test_cube_minimum_length():
    assert min_shared_length(cube_pair()) == pytest.approx(2 - math.sqrt(2), abs=1e-9)
    assert analyze(cube_pair(0.5)).to_dict()["verdict"] == "COLLIDE"
    assert analyze(cube_pair(2 - math.sqrt(2))).ok  # boundary counts as ok
    assert analyze(cube_pair(0.6)).ok


def test_wide_angle_sum_branch_gives_zero():
    # Fabricated solution with a large rotation drives the flap angles
    # past a straight line; the formula's first branch returns zero.
    sol = solve_third(CUBE)
    fake = ThirdSolution(
        rho_l=-1.2,
        psi_l=0.0,
        v1=sol.v1,
        v2=sol.v2,
        w=sol.w,
        r=sol.r,
        omega=sol.omega,
        t=sol.t,
    )
    fake_r = ThirdSolution(
        rho_l=1.2,
        psi_l=0.0,
        v1=sol.v1,
        v2=sol.v2,
        w=sol.w,
        r=sol.r,
        omega=sol.omega,
        t=sol.t,
    )
    case = AdjacencyCase(SolvedGadget(CUBE, fake), SolvedGadget(CUBE, fake_r), 0.0)
    t1, t2 = flap_angles(case)
    assert t1 + t2 >= math.pi
    assert min_shared_length(case) == 0.0


def test_symmetry_and_scaling(rng):
    for _ in range(60):
        l = random_valid_spec(rng, deltas=False)
        r = random_valid_spec(rng, deltas=False)
        if l.is_flat or r.is_flat:
            continue
        m = min_shared_length(AdjacencyCase.of(l, r, 1.0))
        lm = GadgetSpec(l.alpha, l.beta_r, l.beta_l)
        rm = GadgetSpec(r.alpha, r.beta_r, r.beta_l)
        assert min_shared_length(AdjacencyCase.of(rm, lm, 1.0)) == pytest.approx(m, abs=1e-9)
        l2 = GadgetSpec(l.alpha, l.beta_l, l.beta_r, ab_len=3.0)
        r2 = GadgetSpec(r.alpha, r.beta_l, r.beta_r, ab_len=3.0)
        assert min_shared_length(AdjacencyCase.of(l2, r2, 1.0)) == pytest.approx(3 * m, abs=1e-9)


def test_monotone_in_flap_angles():
    # Larger flap angles never lengthen the requirement (cube family).
    sol = solve_third(CUBE)
    prev = None
    for rho in (0.0, -0.1, -0.2, -0.3):
        fake = ThirdSolution(rho, 0.0, sol.v1, sol.v2, sol.w, sol.r, sol.omega, sol.t)
        case = AdjacencyCase(SolvedGadget(CUBE, sol), SolvedGadget(CUBE, fake), 1.0)
        val = min_shared_length(case)
        if prev is not None:
            assert val <= prev + 1e-12
        prev = val


def test_overlap_oracle_agrees_near_threshold():
    km = min_shared_length(cube_pair())
    below = cube_pair(km - 0.01)
    above = cube_pair(km + 0.01)
    assert flap_triangles_overlap(below)
    assert not flap_triangles_overlap(above)
    assert not analyze(below).ok
    assert analyze(above).ok


def test_apex_floor_condition():
    assert apex_floor(cube_pair()) == pytest.approx(0.0)
    low = GadgetSpec(math.radians(100), math.radians(70), math.radians(70))
    assert apex_floor(AdjacencyCase.of(low, low, 1.0)) is None


def test_prism_example():
    rep = prism_example_report()
    assert rep["threshold"] == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert len(rep["conditions"]) == 4
    for _, value in rep["conditions"]:
        assert value == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert rep["square_net_ok"]
