import json
import math

import pytest

from gadget_forge.cheng import build_cheng
from gadget_forge.cp import BORDER, MOUNTAIN, VALLEY, ConstructionReport, Crease, CreasePattern
from gadget_forge.division import DivisionPlan, build_division
from gadget_forge.first import FirstParams, build_first
from gadget_forge.fold_io import ExportError, ExportOptions, export_fold, parse_fold
from gadget_forge.onepleat import build_onepleat
from gadget_forge.second import build_second
from gadget_forge.svg_io import export_svg
from gadget_forge.third import build_third
from tests.conftest import CUBE, WIDE


def fold_label_set(cp):
    return {(c.label, c.fold) for c in cp.creases if c.fold != BORDER}


def test_fold_round_trip_byte_identical():
    cp = build_third(CUBE)
    first = export_fold(cp)
    again = export_fold(parse_fold(first))
    assert first == again


def test_fold_deterministic():
    assert export_fold(build_third(WIDE)) == export_fold(build_third(WIDE))


def test_fold_assignment_multiset_survives_round_trip():
    cp = build_third(CUBE)
    doc = json.loads(export_fold(cp))
    back = parse_fold(export_fold(cp))
    assert sorted(doc["edges_assignment"]) == sorted(
        {"mountain": "M", "valley": "V", "border": "B"}[c.fold] for c in back.creases
    )


def test_fold_svg_counts_agree():
    for cp in (build_third(CUBE), build_cheng(CUBE, "L"), build_onepleat(CUBE, "L")):
        doc = json.loads(export_fold(cp))
        svg = export_svg(cp).decode()
        assert svg.count("<path") == len(doc["edges_vertices"])


def test_svg_styles():
    svg = export_svg(build_third(CUBE)).decode()
    assert 'stroke-dasharray="6,3"' in svg
    assert "<title>m_L</title>" in svg
    # viewBox spans the sheet (6 ridge lengths at 100 units each).
    assert 'viewBox="0 0 600 600"' in svg


def test_empty_pattern_rejected():
    cp = CreasePattern([], ConstructionReport("empty"), eps=1e-9)
    with pytest.raises(ExportError):
        export_fold(cp)
    with pytest.raises(ExportError):
        export_svg(cp)


def test_crossing_pattern_rejected():
    from gadget_forge.geometry import Point2

    creases = [
        Crease(Point2(0, 0), Point2(1, 1), MOUNTAIN, "a"),
        Crease(Point2(0, 1), Point2(1, 0), VALLEY, "b"),
    ]
    cp = CreasePattern.build(creases, ConstructionReport("bad"), eps=1e-9)
    with pytest.raises(ExportError):
        export_fold(cp)


def test_precision_bounds():
    with pytest.raises(ValueError):
        ExportOptions(precision=5)
    with pytest.raises(ValueError):
        ExportOptions(precision=16)


# Golden mountain/valley label sets per construction (assignment tables).

def test_third_labels_cube():
    cp = build_third(CUBE)
    mountains = {l for l, f in fold_label_set(cp) if f == MOUNTAIN}
    valleys = {l for l, f in fold_label_set(cp) if f == VALLEY}
    assert mountains == {
        "j_L", "j_R", "m_L", "m_R", "A E_L", "A E_R",
        "B_L G_L", "B_R G_R", "B_L P_L", "B_R P_R", "E_L E_R",
    }
    assert valleys == {
        "k_L", "k_R", "ell_L", "ell_R", "AB_L", "AB_R",
        "B_L E_L", "B_R E_R", "G_L G_R", "P_L P_R",
    }


def test_second_labels_cube():
    cp = build_second(CUBE, 0.0)
    mountains = {l for l, f in fold_label_set(cp) if f == MOUNTAIN}
    valleys = {l for l, f in fold_label_set(cp) if f == VALLEY}
    assert mountains == {
        "j_L", "j_R", "m_L", "m_R", "A E_L", "A E_R",
        "B_L G_L", "B_R G_R", "B_L P_L", "B_R P_R", "E_L E_R",
    }
    assert valleys == {
        "k_L", "k_R", "ell_L", "ell_R", "AB_L", "AB_R",
        "B_L E_L", "B_R E_R", "G_L G_R", "P_L P_R",
    }


def test_onepleat_labels_cube():
    cp = build_onepleat(CUBE, "L")
    assert fold_label_set(cp) == {
        ("j_L", MOUNTAIN), ("j_R", MOUNTAIN), ("b", MOUNTAIN), ("B' B_R", MOUNTAIN),
        ("k_L", VALLEY), ("k_R", VALLEY), ("c_R", VALLEY), ("AB_R", VALLEY),
    }


def test_cheng_labels_cube():
    cp = build_cheng(CUBE, "L")
    assert fold_label_set(cp) == {
        ("j_L", MOUNTAIN), ("j_R", MOUNTAIN), ("m_L", MOUNTAIN), ("m_R", MOUNTAIN),
        ("AP", MOUNTAIN), ("B_R B'_R", MOUNTAIN), ("C Q_R", MOUNTAIN), ("B'_L C", MOUNTAIN),
        ("k_L", VALLEY), ("k_R", VALLEY), ("ellp_L", VALLEY), ("ellp_R", VALLEY),
        ("CP", VALLEY), ("B_R Q_R", VALLEY), ("B'_R C", VALLEY),
    }


def test_first_labels_cube_practical():
    cp = build_first(CUBE, FirstParams("L", math.radians(110)))
    mountains = {l for l, f in fold_label_set(cp) if f == MOUNTAIN}
    valleys = {l for l, f in fold_label_set(cp) if f == VALLEY}
    # delta = 0 merges P into E on the chosen side: no B_L E_L valley.
    assert mountains == {
        "j_L", "j_R", "m_L", "m_R", "A E_L", "A E_R", "E_L E_R",
        "B_L G_L", "B_R G_R", "B_R P_R",
    }
    assert valleys == {
        "k_L", "k_R", "ell_L", "ell_R", "AB_L", "AB_R",
        "B_R E_R", "G_L G_R", "P_L P_R",
    }


def test_division_labels_cube_d2():
    cp = build_division(CUBE, DivisionPlan.equal(2))
    mountains = {l for l, f in fold_label_set(cp) if f == MOUNTAIN}
    valleys = {l for l, f in fold_label_set(cp) if f == VALLEY}
    assert mountains == {
        "j_L", "j_R", "m_L(1)", "m_R(1)", "m_L(2)", "m_R(2)",
        "A(1) E_L(1)", "A(1) E_R(1)", "E_L(1) E_R(1)",
        "B_L(1) G_L(1)", "B_R(1) G_R(1)", "B_L(1) P_L(1)", "B_R(1) P_R(1)",
        "A E_L(2)", "A E_R(2)", "A(1) E_L(2)", "A(1) E_R(2)",
        "A F'(2)", "B_L(2) J_L(2)", "B_R(2) J_R(2)",
    }
    assert valleys == {
        "k_L", "k_R", "ell_L", "ell_R", "AB_L", "AB_R",
        "ell_L(1)", "ell_R(1)",
        "B_L(1) E_L(1)", "B_R(1) E_R(1)", "G_L(1) G_R(1)", "P_L(1) P_R(1)",
        "A(1) F'(2)", "E_L(2) E_R(2)",
        "B_L(1) J_L(2)", "B_R(1) J_R(2)",
    }
