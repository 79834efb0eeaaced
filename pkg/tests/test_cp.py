import math

import pytest

from gadget_forge.cp import (
    MOUNTAIN,
    VALLEY,
    ConstructionReport,
    Crease,
    CreasePattern,
    PatternError,
    assert_identities,
    check_planarity,
    kawasaki_residual,
)
from gadget_forge.geometry import Point2, unit


def star(angles_deg, folds=None):
    o = Point2(0.0, 0.0)
    folds = folds or [MOUNTAIN] * len(angles_deg)
    creases = [
        Crease(o, unit(math.radians(a)), f, f"r{i}")
        for i, (a, f) in enumerate(zip(angles_deg, folds))
    ]
    meta = ConstructionReport(construction="test")
    meta.points["O"] = o
    return CreasePattern.build(creases, meta, eps=1e-9)


def test_kawasaki_balanced():
    cp = star([0, 90, 180, 270])
    assert kawasaki_residual(cp, Point2(0, 0)) == pytest.approx(0.0, abs=1e-12)


def test_kawasaki_unbalanced():
    cp = star([0, 80, 180, 270])
    assert kawasaki_residual(cp, Point2(0, 0)) == pytest.approx(math.radians(20), abs=1e-12)


def test_kawasaki_unknown_vertex():
    cp = star([0, 90, 180, 270])
    with pytest.raises(KeyError):
        kawasaki_residual(cp, Point2(5, 5))


def test_planarity_shared_endpoint_ok():
    o = Point2(0, 0)
    creases = [
        Crease(o, Point2(1, 0), MOUNTAIN, "a"),
        Crease(o, Point2(0, 1), VALLEY, "b"),
    ]
    cp = CreasePattern.build(creases, ConstructionReport("test"), eps=1e-9)
    assert check_planarity(cp) == []


def test_planarity_x_crossing_flagged():
    creases = [
        Crease(Point2(0, 0), Point2(1, 1), MOUNTAIN, "a"),
        Crease(Point2(0, 1), Point2(1, 0), VALLEY, "b"),
    ]
    cp = CreasePattern.build(creases, ConstructionReport("test"), eps=1e-9)
    assert check_planarity(cp) == [("a", "b")]


def test_t_junction_splits_crease():
    creases = [
        Crease(Point2(0, 0), Point2(2, 0), MOUNTAIN, "bar"),
        Crease(Point2(1, 0), Point2(1, 1), VALLEY, "stem"),
    ]
    cp = CreasePattern.build(creases, ConstructionReport("test"), eps=1e-9)
    bars = [c for c in cp.creases if c.label == "bar"]
    assert len(bars) == 2
    assert check_planarity(cp) == []
    assert cp.degree(Point2(1, 0)) == 3


def test_duplicate_creases_merge():
    meta = ConstructionReport("test")
    creases = [
        Crease(Point2(0, 0), Point2(1, 0), MOUNTAIN, "a"),
        Crease(Point2(1, 0), Point2(0, 0), MOUNTAIN, "b"),
    ]
    cp = CreasePattern.build(creases, meta, eps=1e-9)
    assert len(cp.creases) == 1
    assert meta.merges == ["b merged into a"]


def test_conflicting_duplicate_raises():
    creases = [
        Crease(Point2(0, 0), Point2(1, 0), MOUNTAIN, "a"),
        Crease(Point2(0, 0), Point2(1, 0), VALLEY, "b"),
    ]
    with pytest.raises(PatternError):
        CreasePattern.build(creases, ConstructionReport("test"), eps=1e-9)


def test_identity_evaluation():
    meta = ConstructionReport("test")
    meta.points.update({"O": Point2(0, 0), "X": Point2(1, 0), "Y": Point2(0, 1)})
    meta.add_identity(
        "right angle",
        [(1.0, ("angle", "O", "X", "Y")), (-1.0, ("const", math.pi / 2))],
    )
    cp = CreasePattern.build(
        [Crease(Point2(0, 0), Point2(1, 0), MOUNTAIN, "a")], meta, eps=1e-9
    )
    checks = assert_identities(cp)
    assert checks[0].name == "right angle"
    assert checks[0].residual == pytest.approx(0.0, abs=1e-15)
