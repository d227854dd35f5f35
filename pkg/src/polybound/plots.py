"""Figure rendering for the CLI report paths (PNG/PDF files via matplotlib)."""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_bound_plot(path, reports, fstar=None, title=None):
    """Bound-per-level staircase; optionally a horizontal ground-truth line."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ds = [r.d for r in reports if math.isfinite(r.lam)]
    ls = [r.lam for r in reports if math.isfinite(r.lam)]
    ax.plot(ds, ls, "o-", label="upper bound")
    bad = [(r.d, r.lam) for r in reports
           if math.isfinite(r.lam) and r.status != "ok"]
    if bad:
        ax.plot([d for d, _ in bad], [v for _, v in bad], "rx",
                markersize=9, label="ill-conditioned")
    if fstar is not None:
        ax.axhline(float(fstar), color="gray", linestyle="--", label="minimum")
    ax.set_xlabel("level d")
    ax.set_ylabel("bound")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_density_plot(path, xs, values, title=None):
    """Profile of a one-dimensional density."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(xs, values, "-")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
