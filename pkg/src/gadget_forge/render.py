"""Matplotlib preview of crease patterns (PNG alongside the data exports)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection

from .cp import BORDER, MOUNTAIN, VALLEY, CreasePattern

_STYLE = {
    MOUNTAIN: dict(color="#d62728", lw=1.4, ls="-"),
    VALLEY: dict(color="#1f77b4", lw=1.4, ls=(0, (5, 3))),
    BORDER: dict(color="black", lw=2.0, ls="-"),
}


def render_png(cp: CreasePattern, path: str, label_points: bool = True, dpi: int = 150) -> None:
    fig, ax = plt.subplots(figsize=(7, 7))
    for fold, style in _STYLE.items():
        segs = [
            [(c.start.x, c.start.y), (c.end.x, c.end.y)]
            for c in cp.creases
            if c.fold == fold
        ]
        if segs:
            ax.add_collection(LineCollection(segs, label=fold, **style))
    if label_points:
        seen = set()
        for name, p in cp.meta.points.items():
            if name.endswith("_dir") or "@" in name:
                continue
            key = (round(p.x, 9), round(p.y, 9))
            ax.plot([p.x], [p.y], "k.", ms=3)
            if key not in seen:
                ax.annotate(name, (p.x, p.y), fontsize=7, xytext=(2, 2),
                            textcoords="offset points")
                seen.add(key)
    ax.set_aspect("equal")
    ax.autoscale()
    ax.legend(loc="upper right", fontsize=8)
    title = cp.meta.construction
    if cp.meta.tau:
        title += f" (tau={cp.meta.tau})"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
