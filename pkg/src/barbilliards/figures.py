"""Optional matplotlib renderings for the sweep report path.

PNG output accompanies the delimited data; the contractual, byte-stable
vector output stays in the svg module.
"""

from __future__ import annotations

import math


def render_sweep_png(
    path: str,
    xs,
    ys,
    ms,
    chord=None,
    ellipse=None,
    dpi: int = 150,
) -> None:
    """Scatter of the grid classification with the tangency ellipse overlay."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    colors = {0: "#c5dff2", 1: "#f2d0c5", 2: "#c9f2c5"}
    for m in (0, 1, 2):
        px = [x for x, mm in zip(xs, ms) if mm == m]
        py = [y for y, mm in zip(ys, ms) if mm == m]
        if px:
            ax.scatter(px, py, s=3.0, c=colors[m], label=f"m = {m}", linewidths=0)
    theta = [2.0 * math.pi * i / 512 for i in range(513)]
    ax.plot([math.cos(a) for a in theta], [math.sin(a) for a in theta], "k-", lw=1.0)
    if ellipse is not None:
        pts = [ellipse.point_at(a) for a in theta]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "-", c="#b2321f", lw=1.2)
    if chord is not None:
        p, q = chord
        ax.plot([p.x, q.x], [p.y, q.y], "ko", ms=4)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8, framealpha=0.9)
    ax.set_title("inscribed-triangle count over third-vertex positions")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
