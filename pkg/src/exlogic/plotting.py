"""Figures written next to the text reports: Hasse diagrams and corpus summaries.

Uses the non-interactive Agg backend, so it runs headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lattice import FiniteLattice  # noqa: E402

__all__ = ["hasse_layout", "plot_hasse", "plot_corpus_summary"]

NEG_COLOUR = "tab:red"


def hasse_layout(lattice: FiniteLattice) -> dict[int, tuple[float, float]]:
    """Element index -> (x, y); y is the height, x spreads each level evenly in file order."""
    h = lattice.heights()
    pos = {}
    for level in sorted(set(h.tolist())):
        members = [i for i in range(lattice.n) if h[i] == level]
        k = len(members)
        for slot, i in enumerate(members):
            pos[i] = (slot - (k - 1) / 2.0, float(level))
    return pos


def plot_hasse(lattice: FiniteLattice, path, title: Optional[str] = None, show_negation: bool = True) -> Path:
    """Write a PNG of the Hasse diagram; negation arrows dashed, ``0``/``1`` swaps omitted."""
    pos = hasse_layout(lattice)
    width = max(3.0, 1.1 * max(np.bincount(lattice.heights())))
    height = max(3.0, 1.1 * (max(p[1] for p in pos.values()) + 1))
    fig, ax = plt.subplots(figsize=(width, height))
    for lo, hi in lattice.covers():
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="black", lw=1.2, zorder=1)
    if show_negation and lattice.neg is not None:
        ends = {lattice.bottom, lattice.top}
        for i in range(lattice.n):
            j = int(lattice.neg[i])
            if i == j or (i in ends and j in ends):
                continue
            ax.annotate(
                "", xy=pos[j], xytext=pos[i],
                arrowprops=dict(arrowstyle="->", color=NEG_COLOUR, ls="--", lw=1.0,
                                connectionstyle="arc3,rad=0.25", shrinkA=9, shrinkB=9),
                zorder=2,
            )
    for i, (x, y) in pos.items():
        ax.text(x, y, lattice.names[i], ha="center", va="center", zorder=3,
                bbox=dict(boxstyle="circle,pad=0.25", fc="white", ec="black", lw=0.8))
    ax.set_axis_off()
    ax.margins(0.2)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def plot_corpus_summary(table, path) -> Path:
    """Two panels: lattices per size, and per Nu/Vi/Cl combination."""
    sizes = table.sizes()
    combos = table.counts()
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.4))
    left.bar([str(k) for k in sizes], list(sizes.values()), color="tab:blue")
    left.set_xlabel("size")
    left.set_ylabel("lattices")
    left.set_yscale("log")
    labels = list(combos)
    right.barh(labels, [combos[k] for k in labels], color="tab:gray")
    right.set_xlabel("lattices")
    right.set_xscale("log")
    for ax in (left, right):
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out
