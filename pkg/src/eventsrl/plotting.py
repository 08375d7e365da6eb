"""Report figures written next to the delimited outputs."""
from __future__ import annotations

from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .analysis import END, START
from .errors import IoError

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "eventsrl",
}
COLORS = ("#4c72b0", "#dd8452", "#55a868")


def _save(fig, path):
    # no Software/date metadata so reruns produce identical files
    try:
        fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    except OSError as exc:
        raise IoError(f"cannot write figure {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)


def plot_role_scores(report, path, title="Per-role scores"):
    """Grouped precision/recall/F1 bars per role plus the micro-averaged overall."""
    roles = report.roles()
    names = [r.value for r in roles] + ["overall"]
    keys = roles + [None]
    scores = np.array([[report.precision(k), report.recall(k), report.f1(k)] for k in keys])
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.7 * len(names) + 1.5), 3.2))
        x = np.arange(len(names))
        for i, (label, color) in enumerate(zip(("precision", "recall", "F1"), COLORS)):
            ax.bar(x + (i - 1) * 0.27, scores[:, i], width=0.27, label=label, color=color)
        ax.set_xticks(x)
        ax.set_xticklabels(names, rotation=35, ha="right")
        ax.set_ylim(0, 1.05)
        ax.set_ylabel("score")
        ax.set_title(title)
        ax.legend(ncol=3, loc="lower right", frameon=False)
        _save(fig, path)


def plot_role_counts(assignments, path, title="Extracted role values"):
    """Horizontal bars: how many values each role received in the augmented log."""
    counts = Counter(a.role.value for a in assignments)
    names = sorted(counts, key=lambda n: (-counts[n], n))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 0.35 * max(len(names), 1) + 1.0))
        y = np.arange(len(names))
        ax.barh(y, [counts[n] for n in names], color=COLORS[0])
        ax.set_yticks(y)
        ax.set_yticklabels(names)
        ax.invert_yaxis()
        ax.set_xlabel("values")
        ax.set_title(title)
        _save(fig, path)


def _layers(graph):
    """Longest-path-free layering: BFS depth from the start node; end goes last."""
    succ = {}
    for a, b in graph.edges:
        succ.setdefault(a, []).append(b)
    depth = {START: 0}
    frontier = [START]
    while frontier:
        nxt = []
        for node in frontier:
            for b in sorted(succ.get(node, [])):
                if b not in depth and b != END:
                    depth[b] = depth[node] + 1
                    nxt.append(b)
        frontier = nxt
    for node in graph.nodes:
        depth.setdefault(node, 1)
    depth[END] = max(depth.values()) + 1
    return depth


def plot_dfg(graph, path):
    """Left-to-right drawing of a directly-follows graph; edge width follows frequency."""
    depth = _layers(graph)
    columns = {}
    for node in sorted(depth, key=lambda n: (depth[n], n)):
        columns.setdefault(depth[node], []).append(node)
    pos = {}
    for d, members in columns.items():
        for i, node in enumerate(members):
            pos[node] = (d, -(i - (len(members) - 1) / 2))
    top = max(graph.edges.values(), default=1)
    with plt.rc_context(STYLE):
        width = 1.6 * (max(columns) + 1)
        height = 0.9 * max(len(m) for m in columns.values()) + 1.0
        fig, ax = plt.subplots(figsize=(width, height))
        for (a, b), n in sorted(graph.edges.items()):
            (x0, y0), (x1, y1) = pos[a], pos[b]
            rad = 0.35 if x1 <= x0 else 0.1
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="-|>", lw=0.6 + 2.4 * n / top, color="0.45",
                                        shrinkA=14, shrinkB=14, connectionstyle=f"arc3,rad={rad}"))
            ax.text((x0 + x1) / 2, (y0 + y1) / 2 + 0.12, str(n), fontsize=7, ha="center", color="0.3")
        for node, (x, y) in pos.items():
            label = node if node in (START, END) else f"{node}\n{graph.nodes[node]}"
            ax.text(x, y, label, ha="center", va="center", fontsize=8,
                    bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="0.3"))
        ax.set_xlim(-0.6, max(columns) + 0.6)
        ys = [y for _, y in pos.values()]
        ax.set_ylim(min(ys) - 0.7, max(ys) + 0.7)
        ax.set_title(f"object: {graph.object}")
        ax.axis("off")
        _save(fig, path)
