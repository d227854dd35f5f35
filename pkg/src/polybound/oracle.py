"""Independent ground-truth engines used by tests and sanity checks:
dense-grid minimization (a certified upper bound on the true minimum, since
every grid point is feasible) and Monte Carlo moment estimation for the
measures whose closed forms deserve cross-checking.
"""

from __future__ import annotations

import math

import numpy as np

from ._rat import to_float
from .measures import MeasureSpec
from .poly import Polynomial


def eval_on_arrays(f: Polynomial, cols) -> np.ndarray:
    """Vectorized evaluation: cols is one float array per variable."""
    if len(cols) != f.n:
        raise ValueError("dimension mismatch")
    out = np.zeros_like(cols[0], dtype=float)
    for e, c in f.terms.items():
        term = np.full_like(out, to_float(c))
        for col, k in zip(cols, e):
            if k:
                term = term * col ** k
        out += term
    return out


def grid_minimize(f: Polynomial, box, resolution: int):
    """Minimum of f over a uniform grid on a box, with the minimizing point.

    box: one (lo, hi) pair per variable.  resolution: points per axis
    (>= 2, endpoints included).  The result is always an upper bound on the
    true minimum over the box.
    """
    if len(box) != f.n:
        raise ValueError("box dimension mismatch")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    axes = [np.linspace(float(lo), float(hi), resolution) for lo, hi in box]
    if f.n == 1:
        vals = eval_on_arrays(f, [axes[0]])
        i = int(np.argmin(vals))
        return float(vals[i]), (float(axes[0][i]),)
    grids = np.meshgrid(*axes, indexing="ij")
    flat = [g.ravel() for g in grids]
    vals = eval_on_arrays(f, flat)
    i = int(np.argmin(vals))
    return float(vals[i]), tuple(float(c[i]) for c in flat)


def _sample_support(spec: MeasureSpec, samples: int, rng: np.random.Generator):
    n = spec.n
    if spec.kind == "uniform_sphere":
        z = rng.standard_normal((samples, n))
        return z / np.linalg.norm(z, axis=1, keepdims=True)
    if spec.kind == "uniform_ball":
        z = rng.standard_normal((samples, n))
        u = z / np.linalg.norm(z, axis=1, keepdims=True)
        r = rng.random(samples) ** (1.0 / n)
        return u * r[:, None]
    if spec.kind == "uniform_simplex":
        # normalized exponential spacings: (E_1,...,E_n)/sum(E_1..E_{n+1})
        e = rng.exponential(size=(samples, n + 1))
        return e[:, :n] / e.sum(axis=1, keepdims=True)
    raise ValueError(f"no sampler for measure kind {spec.kind!r}")


def mc_moment(spec: MeasureSpec, alpha, samples: int, seed: int = 0):
    """Monte Carlo estimate of a moment with its standard error.

    Supports the ball, sphere and simplex measures; other kinds have exact
    formulas simple enough not to need a stochastic cross-check.
    """
    alpha = tuple(int(k) for k in alpha)
    if len(alpha) != spec.n:
        raise ValueError("exponent length mismatch")
    if samples < 10 ** 4:
        raise ValueError("use at least 10^4 samples")
    rng = np.random.default_rng(seed)
    pts = _sample_support(spec, samples, rng)
    vals = np.ones(samples)
    for i, k in enumerate(alpha):
        if k:
            vals = vals * pts[:, i] ** k
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(samples))
    return est, se
