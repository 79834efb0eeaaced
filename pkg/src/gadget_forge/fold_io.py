"""FOLD 1.1 emission and parsing with byte-deterministic output.

Vertices are rounded to the requested precision, deduplicated and sorted
lexicographically; edges are sorted by endpoint indices.  Crease labels
and the construction report ride along in namespaced custom fields, so a
parse -> export round trip reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cp import BORDER, MOUNTAIN, VALLEY, ConstructionReport, Crease, CreasePattern
from .geometry import Point2

ASSIGNMENT = {MOUNTAIN: "M", VALLEY: "V", BORDER: "B"}
FOLD_OF = {"M": MOUNTAIN, "V": VALLEY, "B": BORDER}
NAMESPACE = "gadgetForge"


@dataclass(frozen=True)
class ExportOptions:
    format: str = "fold"  # fold | svg | both
    units_per_ab: float = 100.0
    bbox_scale: float = 6.0
    precision: int = 9

    def __post_init__(self) -> None:
        if not (6 <= self.precision <= 15):
            raise ValueError("precision must lie in [6, 15]")
        if self.format not in ("fold", "svg", "both", "png"):
            raise ValueError(f"unknown format {self.format!r}")


class ExportError(ValueError):
    pass


def _round(x: float, precision: int) -> float:
    v = round(x, precision)
    return 0.0 if v == 0.0 else v  # normalize -0.0


def export_fold(cp: CreasePattern, opts: ExportOptions = ExportOptions()) -> bytes:
    from .cp import check_planarity

    if not cp.creases:
        raise ExportError("refusing to export an empty pattern")
    crossings = check_planarity(cp)
    if crossings:
        raise ExportError(f"pattern has illegal crossings: {crossings[:4]}")

    p = opts.precision
    verts: list[tuple[float, float]] = []
    index: dict[tuple[float, float], int] = {}
    for c in cp.creases:
        for pt in (c.start, c.end):
            key = (_round(pt.x, p), _round(pt.y, p))
            if key not in index:
                index[key] = 0
                verts.append(key)
    verts.sort()
    index = {v: i for i, v in enumerate(verts)}

    edges = []
    for c in cp.creases:
        i = index[(_round(c.start.x, p), _round(c.start.y, p))]
        j = index[(_round(c.end.x, p), _round(c.end.y, p))]
        if i == j:
            raise ExportError(f"crease {c.label!r} collapsed at this precision")
        a, b = (i, j) if i < j else (j, i)
        edges.append(((a, b), ASSIGNMENT[c.fold], c.label))
    edges.sort(key=lambda e: (e[0], e[1], e[2]))

    doc = {
        "file_spec": 1.1,
        "file_creator": "gadget-forge",
        "file_classes": ["creasePattern"],
        "vertices_coords": [[x, y] for x, y in verts],
        "edges_vertices": [list(e[0]) for e in edges],
        "edges_assignment": [e[1] for e in edges],
        f"{NAMESPACE}:edges_labels": [e[2] for e in edges],
        f"{NAMESPACE}:report": cp.meta.to_dict(),
    }
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def parse_fold(data: bytes) -> CreasePattern:
    doc = json.loads(data.decode("utf-8"))
    try:
        coords = doc["vertices_coords"]
        edges = doc["edges_vertices"]
        assigns = doc["edges_assignment"]
    except KeyError as e:
        raise ExportError(f"missing FOLD field {e}") from e
    labels = doc.get(f"{NAMESPACE}:edges_labels", ["" for _ in edges])
    report = doc.get(f"{NAMESPACE}:report")
    meta = (
        ConstructionReport.from_dict(report)
        if report
        else ConstructionReport(construction="imported")
    )
    creases = []
    for (i, j), assign, label in zip(edges, assigns, labels):
        fold = FOLD_OF.get(assign)
        if fold is None:
            raise ExportError(f"unsupported assignment {assign!r}")
        creases.append(
            Crease(
                Point2(coords[i][0], coords[i][1]),
                Point2(coords[j][0], coords[j][1]),
                fold,
                label or "edge",
            )
        )
    scale = meta.scalars.get("sheet_half", 1.0)
    return CreasePattern(creases, meta, eps=1e-9 * max(scale, 1.0))
