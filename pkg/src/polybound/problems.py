"""Benchmark problem generators: fixed test polynomials, MAXCUT-style
quadratic instances on the hypercube, and an exhaustive vertex oracle.

Random instances use a self-contained splitmix64 generator so that an
instance is reproducible bit-for-bit from (n, density, seed) on any
platform, independent of Python's own RNG evolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rat import Rat, rat, rat_str
from .poly import Polynomial


def motzkin_like() -> Polynomial:
    """x1^2 x2^2 (x1^2 + x2^2 - 1), expanded; infimum -1/27 on the
    nonnegative quadrant, attained at x1 = x2 = sqrt(1/3)."""
    return Polynomial(2, {(4, 2): 1, (2, 4): 1, (2, 2): -1})


def unattained_infimum() -> Polynomial:
    """x1^2 + (1 - x1 x2)^2, expanded; its infimum 0 over the nonnegative
    quadrant is approached along x1 -> 0, x1 x2 -> 1 but never attained."""
    return Polynomial(2, {(2, 0): 1, (0, 0): 1, (1, 1): -2, (2, 2): 1})


def two_well_quartic() -> Polynomial:
    """3/8 - 5x + 21x^2 - 32x^3 + 16x^4: a univariate quartic with two
    global minimizers inside (0, 1) at the same depth."""
    return Polynomial(1, {(0,): Rat(3, 8), (1,): -5, (2,): 21, (3,): -32, (4,): 16})


class SplitMix64:
    """Tiny deterministic 64-bit PRNG (splitmix64), stable across platforms."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def next_unit(self) -> Rat:
        """Uniform rational in [0, 1) with 53 bits of resolution."""
        return Rat(self.next_u64() >> 11, 1 << 53)


@dataclass(frozen=True)
class MaxCutInstance:
    """Symmetric weight matrix with zero diagonal; the objective is the
    quadratic form x^T Q x minimized over the hypercube vertices."""

    n: int
    q: tuple
    seed: int = None

    def __post_init__(self):
        if len(self.q) != self.n:
            raise ValueError("matrix size mismatch")
        for i, row in enumerate(self.q):
            if len(row) != self.n:
                raise ValueError("matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal entries must vanish")
            for j in range(i):
                if row[j] != self.q[j][i]:
                    raise ValueError("matrix must be symmetric")

    def objective(self) -> Polynomial:
        terms = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.q[i][j] != 0:
                    e = [0] * self.n
                    e[i] = 1
                    e[j] = 1
                    terms[tuple(e)] = 2 * self.q[i][j]
        return Polynomial(self.n, terms)

    def to_json(self) -> dict:
        out = {"v": 1, "n": self.n,
               "q": [[rat_str(v) for v in row] for row in self.q]}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MaxCutInstance":
        q = tuple(tuple(rat(v) for v in row) for row in obj["q"])
        return cls(n=len(q), q=q, seed=obj.get("seed"))


def maxcut_equal(n: int) -> MaxCutInstance:
    """Equal weights 1/2 off the diagonal; the vertex minimum is -floor(n/2)."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    half = Rat(1, 2)
    q = tuple(tuple(half if i != j else Rat(0) for j in range(n)) for i in range(n))
    return MaxCutInstance(n=n, q=q)


def maxcut_random(n: int, density: float = 0.5, seed: int = 0) -> MaxCutInstance:
    """Each off-diagonal weight survives with probability `density` and then
    draws a uniform value in (0, 1); symmetric, zero diagonal.  Draw order
    is row-major over i < j, two draws per surviving edge."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    rng = SplitMix64(seed)
    dens = rat(density)
    q = [[Rat(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_unit() < dens:
                w = rng.next_unit()
                q[i][j] = q[j][i] = w
    return MaxCutInstance(n=n, q=tuple(tuple(row) for row in q), seed=seed)


def _multilinear_on_vertices(f: Polynomial):
    """Reduce exponents mod 2; on {-1,1}^n squares are identically 1."""
    terms = {}
    for e, c in f.terms.items():
        key = tuple(k % 2 for k in e)
        terms[key] = terms.get(key, Rat(0)) + c
    return terms


def brute_force_hypercube(f: Polynomial, n: int = None):
    """Exhaustive minimum of f over the hypercube vertices {-1,1}^n.

    Returns (exact minimum value, minimizing vertex).  Capped at n = 22
    (4M vertices); the scan is vectorized through sign parities.
    """
    if n is None:
        n = f.n
    if n != f.n:
        raise ValueError("dimension mismatch")
    if n > 22:
        raise ValueError("hypercube scan capped at n = 22")
    terms = _multilinear_on_vertices(f)
    size = 1 << n
    idx = np.arange(size, dtype=np.uint32)
    vals = np.zeros(size)
    for e, c in terms.items():
        mask = 0
        for i, k in enumerate(e):
            if k:
                mask |= 1 << i
        if mask == 0:
            vals += float(c)
        else:
            parity = np.bitwise_count(idx & np.uint32(mask)) & 1
            vals += float(c) * (1.0 - 2.0 * parity.astype(np.float64))
    near = np.flatnonzero(vals <= vals.min() + 1e-9 * max(1.0, abs(float(vals.min()))))
    best_val = None
    best_vertex = None
    for v_idx in near[:64]:
        vertex = tuple(1 if (int(v_idx) >> i) & 1 == 0 else -1 for i in range(n))
        exact = f.evaluate(vertex)
        if best_val is None or exact < best_val:
            best_val = exact
            best_vertex = vertex
    return best_val, best_vertex
