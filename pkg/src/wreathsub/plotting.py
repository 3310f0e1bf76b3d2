"""Figures for coset spaces: the coset (Schreier) graph with a transversal tree
highlighted, and per-coset syllable lengths."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .action import FREE_GROUP  # noqa: E402

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _layout(n: int):
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(2 * math.pi * i / n + math.pi / 2), math.sin(2 * math.pi * i / n + math.pi / 2))
            for i in range(n)]


def _edges(cs):
    """(label index, label, src, dst) for every generator / factor-element edge."""
    out = []
    if cs.kind == FREE_GROUP:
        for g, name in enumerate(cs.problem.generators):
            for i, j in enumerate(cs.actions[g]):
                out.append((g, name, i, j))
    else:
        for a, acts in enumerate(cs.actions):
            for k in range(1, len(acts)):
                for i, j in enumerate(acts[k]):
                    out.append((a, f"f{a}", i, j))
    return out


def plot_coset_graph(cs, path: str, tree=(), title: str = ""):
    """Draw the coset graph; ``tree`` is a set of (src, dst) pairs drawn bold."""
    n = cs.size
    pos = _layout(n)
    fig, ax = plt.subplots(figsize=(5, 5))
    tree = set(tree)
    labelled = set()
    for idx, label, i, j in _edges(cs):
        color = PALETTE[idx % len(PALETTE)]
        kw = {"label": label} if label not in labelled else {}
        labelled.add(label)
        if i == j:
            x, y = pos[i]
            ax.add_patch(plt.Circle((x * 1.12, y * 1.12), 0.08, fill=False, color=color, lw=0.8))
            continue
        (x0, y0), (x1, y1) = pos[i], pos[j]
        bold = (i, j) in tree
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="->", color=color, lw=2.2 if bold else 0.8,
                                    shrinkA=9, shrinkB=9, connectionstyle="arc3,rad=0.12"))
        ax.plot([], [], color=color, **kw)
    xs, ys = zip(*pos)
    ax.scatter(xs, ys, s=260, c="white", edgecolors="black", zorder=3)
    for i, (x, y) in enumerate(pos):
        ax.text(x, y, str(i), ha="center", va="center", fontsize=9, zorder=4)
    ax.set_aspect("equal")
    ax.set_xlim(-1.4, 1.4)
    ax.set_ylim(-1.4, 1.4)
    ax.axis("off")
    ax.legend(loc="upper right", fontsize=8, frameon=False)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_syllable_lengths(lengths, path: str, title: str = ""):
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(len(lengths)), lengths, color=PALETTE[0])
    ax.set_xlabel("coset")
    ax.set_ylabel("syllable length")
    ax.set_xticks(range(len(lengths)))
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def transversal_tree(cs, reps) -> set:
    """Edges (parent coset, child coset) of a prefix-closed transversal."""
    edges = set()
    for i, t in enumerate(reps):
        letters = t.letters if hasattr(t, "letters") else t.syllables
        if letters:
            parent = cs.coset_of_word(type(t)(letters[:-1]))
            edges.add((parent, i))
    return edges


def write_figures(cs, outdir: str, stem: str, reps=(), lengths=None):
    os.makedirs(outdir, exist_ok=True)
    paths = [plot_coset_graph(cs, os.path.join(outdir, f"{stem}_coset_graph.png"),
                              transversal_tree(cs, reps), title=f"{stem}: index {cs.size}")]
    if lengths is not None:
        paths.append(plot_syllable_lengths(lengths, os.path.join(outdir, f"{stem}_syllable_lengths.png"),
                                           title="coset syllable lengths"))
    return paths
