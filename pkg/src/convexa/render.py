"""Figure rendering for realizations and enumeration reports.

Rendering is presentation only: rational coordinates are converted to floats
for drawing, while every certificate stays exact in the JSON output.  All
figures are written straight to files (SVG or any raster format matplotlib
understands from the suffix); nothing opens a window.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

from .codes import word_str
from .realize1d import Realization1D, sample_points

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .realize2d import Realization2D
    from .verifier2d import WitnessedCode


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_realization_1d(real: Realization1D, path: str, *, title: str | None = None) -> None:
    """Stacked interval bars with the left-to-right atom labels underneath."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 1.2 + 0.45 * real.n))
    cmap = plt.get_cmap("tab10")
    for i, interval in enumerate(real.intervals):
        if interval.is_empty:
            continue
        lo, hi = float(interval.lo), float(interval.hi)
        ax.barh(
            i,
            hi - lo,
            left=lo,
            height=0.6,
            color=cmap(i % 10),
            alpha=0.55,
            edgecolor="black",
        )
        ax.text(hi + 0.05, i, f"U{i}", va="center", fontsize=9)

    xs = [float(x) for x in real.endpoints()]

    def word_at(x) -> int:
        word = 0
        for i, interval in enumerate(real.intervals):
            if not interval.is_empty and interval.lo < x < interval.hi:
                word |= 1 << i
        return word

    # group consecutive samples with equal membership and label each group
    # at its mean abscissa
    runs: list[tuple[int, list[float]]] = []
    for x in sample_points(real):
        word = word_at(x)
        if runs and runs[-1][0] == word:
            runs[-1][1].append(float(x))
        else:
            runs.append((word, [float(x)]))
    for word, group in runs:
        ax.text(
            sum(group) / len(group),
            -0.9,
            word_str(word, real.n),
            ha="center",
            fontsize=8,
        )
    for x in xs:
        ax.axvline(x, color="gray", lw=0.5, ls=":")
    ax.set_ylim(-1.4, real.n)
    ax.set_yticks(range(real.n))
    ax.set_yticklabels([f"U{i}" for i in range(real.n)])
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_realization_2d(
    real: "Realization2D",
    certificate: "WitnessedCode | None",
    path: str,
    *,
    title: str | None = None,
) -> None:
    """Translucent filled polygons, universe outline, and atom labels at the
    certificate's witness points."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 7))
    cmap = plt.get_cmap("tab10")

    ring = [(float(v.x), float(v.y)) for v in real.universe.vertices]
    if ring:
        ax.fill(
            *zip(*(ring + [ring[0]])),
            facecolor="none",
            edgecolor="black",
            lw=1.2,
            ls="--",
        )
    for i, poly in enumerate(real.polygons):
        if poly.is_empty:
            continue
        pts = [(float(v.x), float(v.y)) for v in poly.vertices]
        xs, ys = zip(*(pts + [pts[0]]))
        ax.fill(xs, ys, color=cmap(i % 10), alpha=0.28, lw=0)
        ax.plot(xs, ys, color=cmap(i % 10), lw=1.0, label=f"U{i}")
    if certificate is not None:
        for word, point in certificate.witnesses.items():
            ax.annotate(
                word_str(word, real.n),
                (float(point.x), float(point.y)),
                fontsize=8,
                ha="center",
                va="center",
                bbox={"boxstyle": "round,pad=0.15", "fc": "white", "alpha": 0.75, "lw": 0.3},
            )
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_enumeration_summary(
    rows: Sequence[dict], path: str, *, title: str | None = None
) -> None:
    """Stacked convex / not-convex counts per enumerated complex."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(max(6, 0.25 * len(rows) + 2), 4))
    idx = range(len(rows))
    convex = [row["convex"] for row in rows]
    nonconvex = [row["not_convex"] for row in rows]
    ax.bar(idx, convex, color="tab:green", label="convex")
    ax.bar(idx, nonconvex, bottom=convex, color="tab:red", label="not convex")
    ax.set_xlabel("complex (canonical order)")
    ax.set_ylabel("intermediate codes")
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


__all__ = [
    "render_realization_1d",
    "render_realization_2d",
    "render_enumeration_summary",
]
