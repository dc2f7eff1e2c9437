"""Delimited tables and optional matplotlib figures for bigraded data."""

from __future__ import annotations

import csv
import io

__all__ = ["bigraded_rows", "write_tsv", "plot_pages"]


def bigraded_rows(P):
    """Rows (t, q, dim) sorted by t, then q descending."""
    return [(t, q, d) for (t, q), d in sorted(P.items(), key=lambda kv: (kv[0][0], -kv[0][1])) if d]


def write_tsv(tables, path=None):
    """Write ``{label: {(t, q): dim}}`` as one tab-separated table.

    Returns the text; also writes it to ``path`` when given.
    """
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["table", "t", "q", "dim"])
    for label, P in tables.items():
        for row in bigraded_rows(P):
            w.writerow([label, *row])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def plot_pages(pages, path, title=None):
    """Draw each page ``{(t, q): dim}`` as a grid of labelled dots, side by side."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = list(pages)
    keys = {k for P in pages.values() for k in P}
    if not keys:
        keys = {(0, 0)}
    ts = [t for t, _ in keys]
    qs = [q for _, q in keys]
    fig, axes = plt.subplots(1, len(labels), figsize=(3.2 * len(labels), 3.6), squeeze=False)
    for ax, label in zip(axes[0], labels):
        P = pages[label]
        for (t, q), d in P.items():
            if d:
                ax.scatter([t], [q], s=90 + 40 * d, color="tab:blue", zorder=2)
                if d > 1:
                    ax.annotate(str(d), (t, q), ha="center", va="center", color="white",
                                fontsize=8, zorder=3)
        ax.set_xlim(min(ts) - 1, max(ts) + 1)
        ax.set_ylim(min(qs) - 2, max(qs) + 2)
        ax.set_xticks(range(min(ts), max(ts) + 1))
        ax.set_yticks(range(min(qs) - (min(qs) % 2), max(qs) + 1, 2))
        ax.grid(True, alpha=0.3, zorder=1)
        ax.set_xlabel("t (homological)")
        ax.set_ylabel("q")
        ax.set_title("%s  (total %d)" % (label, sum(P.values())))
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
