"""Figures of graphs and correspondence graphs (matplotlib, Agg backend)."""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .decomp import CorrGraph  # noqa: E402
from .gactgraph import Graph  # noqa: E402
from .problem import block_label, corr_label  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 5.0),
    "figure.dpi": 110,
    "font.size": 10,
    "savefig.bbox": "tight",
}


def _layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n)) for i in range(n)]


def _draw(ax, pos, node_labels, arcs, title):
    """``arcs``: list of (src, dst, label); parallel arcs fan out by curvature."""
    seen: Counter = Counter()
    for s, t, lab in arcs:
        k = seen[(s, t)]
        seen[(s, t)] += 1
        x0, y0 = pos[s]
        if s == t:
            r = 0.18 + 0.08 * k
            ang = math.atan2(y0, x0) if (x0, y0) != (0.0, 0.0) else math.pi / 2
            cx, cy = x0 + r * math.cos(ang), y0 + r * math.sin(ang)
            ax.add_patch(plt.Circle((cx, cy), r, fill=False, lw=1.0, color="0.3"))
            if lab:
                ax.text(cx + r * math.cos(ang), cy + r * math.sin(ang), lab, fontsize=8, ha="center", va="center")
            continue
        x1, y1 = pos[t]
        rad = 0.15 + 0.15 * k
        ax.add_patch(
            FancyArrowPatch((x0, y0), (x1, y1), connectionstyle=f"arc3,rad={rad}", arrowstyle="-|>",
                            mutation_scale=12, shrinkA=14, shrinkB=14, lw=1.0, color="0.3")
        )
        if lab:
            mx, my = (x0 + x1) / 2, (y0 + y1) / 2
            dx, dy = x1 - x0, y1 - y0
            ax.text(mx + rad * dy / 2, my - rad * dx / 2, lab, fontsize=8, ha="center", va="center",
                    bbox=dict(boxstyle="round,pad=0.15", fc="white", ec="none"))
    for (x, y), lab in zip(pos, node_labels):
        ax.text(x, y, lab, ha="center", va="center", fontsize=10,
                bbox=dict(boxstyle="circle,pad=0.3", fc="#dde8f4", ec="#2b5d8a"))
    ax.set_xlim(-1.7, 1.7)
    ax.set_ylim(-1.7, 1.7)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title)


def plot_graph(E: Graph, path: str | Path, title: str = "") -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        _draw(ax, _layout(E.n_vertices), list(E.vertices), [(e.src, e.rng, "") for e in E.edges], title)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_corr_graph(cg: CorrGraph, path: str | Path, title: str = "") -> Path:
    sizes = cg.sizes
    arcs = [
        (ce.source, ce.target, corr_label(sizes[ce.source], sizes[ce.target], ce.multiplicity))
        for ce in sorted(cg.edges, key=lambda c: (c.source, c.target, c.orbit))
    ]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        _draw(ax, _layout(len(cg.blocks)), [block_label(n) for n in sizes], arcs, title)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)
