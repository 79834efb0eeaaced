import math

import pytest

from gadget_forge.cp import check_planarity, flat_vertex_residuals
from gadget_forge.frame import GadgetSpec, UnsupportedConstructionError
from gadget_forge.onepleat import build_onepleat, default_tau, onepleat_extension_length
from tests.conftest import CUBE, WIDE, random_valid_spec


def test_extension_cube():
    assert onepleat_extension_length(CUBE, "L") == pytest.approx(1.0, abs=1e-12)


def test_extension_wide():
    # sin(30)/sin(110) and sin(30)/sin(130), ridge length 1.
    assert onepleat_extension_length(WIDE, "L") == pytest.approx(0.5320888862379561, abs=1e-12)
    assert onepleat_extension_length(WIDE, "R") == pytest.approx(0.6527036446661394, abs=1e-12)
    assert default_tau(WIDE) == "L"


def test_delta_rejected():
    spec = GadgetSpec(math.pi / 2, math.pi / 2, math.pi / 2, 0.1, 0.0)
    with pytest.raises(UnsupportedConstructionError):
        build_onepleat(spec, "L")


def test_near_divergent_extension_rejected():
    # beta_r + gamma/2 -> pi exactly at the (i) boundary.
    spec = GadgetSpec(1.0, 1.0, 2.0 - 1e-13)
    with pytest.raises(UnsupportedConstructionError):
        onepleat_extension_length(spec, "R")


def test_cube_pattern_and_mirror():
    cp_l = build_onepleat(CUBE, "L")
    cp_r = build_onepleat(CUBE, "R")
    assert check_planarity(cp_l) == []
    assert max(flat_vertex_residuals(cp_l).values()) < 1e-9
    # Mirror images across the frame axis.
    pl, pr = cp_l.meta.points, cp_r.meta.points
    assert pl["B'"].close_to(pr["B'"], 1e-12)
    lab_l = {(c.label, c.fold) for c in cp_l.creases}
    assert ("b", "mountain") in lab_l
    assert ("c_R", "valley") in lab_l


def test_extension_matches_measured(rng):
    for _ in range(150):
        spec = random_valid_spec(rng, deltas=False)
        if spec.is_flat:
            continue
        for tau in ("L", "R"):
            cp = build_onepleat(spec, tau)
            d = cp.meta.points
            measured = d["B'"].distance_to(d[f"B_{tau}"])
            assert measured == pytest.approx(
                onepleat_extension_length(spec, tau), abs=1e-9
            )
            assert check_planarity(cp) == []
            assert max(flat_vertex_residuals(cp).values()) < 1e-9


def test_no_interference_beyond_parallel_ray(rng):
    # Everything new stays on the near side of the ray from the far ridge
    # copy parallel to the bisector: nothing may cross it.
    for _ in range(40):
        spec = random_valid_spec(rng, deltas=False)
        if spec.is_flat:
            continue
        cp = build_onepleat(spec, "L")
        labels = {c.label for c in cp.creases}
        assert "c_R" in labels
        assert check_planarity(cp) == []
