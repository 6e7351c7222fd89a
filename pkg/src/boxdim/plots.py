"""Static SVG plots of dimension curves and covering counts."""

from __future__ import annotations

import numpy as np


def save_dimension_plot(path, curves, box_curve=None, title=""):
    """Write a self-contained SVG: D_b against r/sbar, with dash-dotted
    equal-spacing reference lines and, when a box-count curve is given,
    an inset of ln N against ln(r/sbar)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    styles = {"BoxCounting": dict(marker="o", mfc="none", ls="none", ms=4)}
    x_max = 0.0
    for curve in curves:
        style = styles.get(curve.source, dict(ls="-", lw=1.5))
        ax.plot(curve.r_over_sbar, curve.d_b, label=f"{curve.label} ({curve.source})", **style)
        x_max = max(x_max, float(curve.r_over_sbar[-1]))
    x_max = min(x_max, 3.5)
    ax.plot([0.0, 1.0], [0.0, 0.0], "k-.", lw=1.0)
    ax.plot([1.0, 1.0], [0.0, 1.0], "k-.", lw=1.0)
    ax.plot([1.0, x_max], [1.0, 1.0], "k-.", lw=1.0)
    ax.set_xlim(0.0, x_max)
    ax.set_ylim(-0.02, 1.05)
    ax.set_xlabel(r"$r/\bar{s}$")
    ax.set_ylabel(r"$D_b(r)$")
    if title:
        ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    if box_curve is not None:
        inset = fig.add_axes([0.18, 0.55, 0.28, 0.3])
        inset.plot(box_curve.ln_r_over_sbar, box_curve.ln_n, "s", mfc="none", ms=3)
        inset.set_xlabel(r"$\ln(r/\bar{s})$", fontsize=8)
        inset.set_ylabel(r"$\ln N(r)$", fontsize=8)
        inset.tick_params(labelsize=7)
    fig.savefig(path, format="svg")
    plt.close(fig)
