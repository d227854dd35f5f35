"""Built-in reference measures and their exact moment sequences.

Every supported measure is a probability measure (mass 1) on its support,
with all moments available in closed form as exact rationals:

  gaussian_Rn          product standard normal on R^n
  exponential_orthant  product Exp(1) on the nonnegative orthant
  lebesgue_box         normalized Lebesgue measure on a box [a_i, b_i]
  uniform_pm1_cube     uniform on the 2^n vertices {-1,1}^n
  uniform_simplex      uniform on the standard simplex {x >= 0, sum x <= 1}
  uniform_ball         uniform on the closed unit ball
  uniform_sphere       rotation-invariant measure on the unit sphere
  discrete             finite weighted point set

Normalization to mass 1 is harmless downstream: scaling a measure scales
both matrices of the eigenvalue pencil by the same constant, so bounds are
unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._rat import Rat, rat, rat_str, to_float
from .poly import Polynomial, enumerate_basis

KINDS = (
    "gaussian_Rn",
    "exponential_orthant",
    "lebesgue_box",
    "uniform_pm1_cube",
    "uniform_simplex",
    "uniform_ball",
    "uniform_sphere",
    "discrete",
)

_SYMMETRIC_KINDS = {"gaussian_Rn", "uniform_pm1_cube", "uniform_ball", "uniform_sphere"}


def _double_factorial_odd(k: int) -> int:
    """(k-1)!! for even k >= 0: product of odd numbers 1*3*...*(k-1)."""
    out = 1
    for j in range(1, k, 2):
        out *= j
    return out


@dataclass(frozen=True)
class MeasureSpec:
    """Identifies a measure; supplies support predicates and descriptors."""

    kind: str
    n: int
    a: tuple = None  # box lower bounds
    b: tuple = None  # box upper bounds
    points: tuple = None  # discrete support points (tuples of rationals)
    weights: tuple = None  # discrete weights, positive, summing to 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == "lebesgue_box":
            if self.a is None or self.b is None:
                raise ValueError("lebesgue_box requires bounds a, b")
            if len(self.a) != self.n or len(self.b) != self.n:
                raise ValueError("box bounds must have length n")
            if any(lo >= hi for lo, hi in zip(self.a, self.b)):
                raise ValueError("box requires a_i < b_i")
        if self.kind == "discrete":
            if not self.points or not self.weights:
                raise ValueError("discrete measure requires points and weights")
            if len(self.points) != len(self.weights):
                raise ValueError("points/weights length mismatch")
            if any(len(p) != self.n for p in self.points):
                raise ValueError("point dimension mismatch")
            if any(w <= 0 for w in self.weights):
                raise ValueError("discrete weights must be positive")
            if sum(self.weights, Rat(0)) != 1:
                raise ValueError("discrete weights must sum to 1")

    # -- constructors ----------------------------------------------------

    @classmethod
    def gaussian(cls, n: int) -> "MeasureSpec":
        return cls("gaussian_Rn", n)

    @classmethod
    def exponential_orthant(cls, n: int) -> "MeasureSpec":
        return cls("exponential_orthant", n)

    @classmethod
    def box(cls, a, b) -> "MeasureSpec":
        a = tuple(rat(x) for x in a)
        b = tuple(rat(x) for x in b)
        return cls("lebesgue_box", len(a), a=a, b=b)

    @classmethod
    def pm1_cube(cls, n: int) -> "MeasureSpec":
        return cls("uniform_pm1_cube", n)

    @classmethod
    def simplex(cls, n: int) -> "MeasureSpec":
        return cls("uniform_simplex", n)

    @classmethod
    def ball(cls, n: int) -> "MeasureSpec":
        return cls("uniform_ball", n)

    @classmethod
    def sphere(cls, n: int) -> "MeasureSpec":
        return cls("uniform_sphere", n)

    @classmethod
    def discrete(cls, points, weights=None) -> "MeasureSpec":
        pts = tuple(tuple(rat(x) for x in p) for p in points)
        if weights is None:
            weights = [Rat(1, len(pts))] * len(pts)
        w = tuple(rat(x) for x in weights)
        return cls("discrete", len(pts[0]), points=pts, weights=w)

    # -- support descriptors ----------------------------------------------

    @property
    def is_compact(self) -> bool:
        return self.kind not in ("gaussian_Rn", "exponential_orthant")

    @property
    def is_discrete(self) -> bool:
        return self.kind in ("uniform_pm1_cube", "discrete")

    @property
    def is_convex(self) -> bool:
        """Whether the support is a convex set."""
        if self.kind in ("uniform_pm1_cube", "uniform_sphere"):
            return False
        if self.kind == "discrete":
            return len(self.points) == 1
        return True

    @property
    def is_symmetric(self) -> bool:
        """Sign-symmetric support/measure: all odd moments vanish."""
        if self.kind in _SYMMETRIC_KINDS:
            return True
        if self.kind == "lebesgue_box":
            return all(lo == -hi for lo, hi in zip(self.a, self.b))
        return False

    def contains(self, x, tol: float = 1e-9) -> bool:
        """Approximate membership of a float point in the support."""
        if len(x) != self.n:
            raise ValueError("point dimension mismatch")
        x = [float(v) for v in x]
        if self.kind == "gaussian_Rn":
            return True
        if self.kind == "exponential_orthant":
            return all(v >= -tol for v in x)
        if self.kind == "lebesgue_box":
            return all(float(lo) - tol <= v <= float(hi) + tol
                       for v, lo, hi in zip(x, self.a, self.b))
        if self.kind == "uniform_pm1_cube":
            return all(abs(abs(v) - 1.0) <= tol for v in x)
        if self.kind == "uniform_simplex":
            return all(v >= -tol for v in x) and sum(x) <= 1.0 + tol
        if self.kind == "uniform_ball":
            return sum(v * v for v in x) <= 1.0 + tol
        if self.kind == "uniform_sphere":
            return abs(sum(v * v for v in x) - 1.0) <= tol
        return any(all(abs(v - float(p)) <= tol for v, p in zip(x, pt))
                   for pt in self.points)

    def natural_range(self):
        """Per-axis (lo, hi) floats covering the bulk of the support;
        used for default evaluation grids."""
        if self.kind == "lebesgue_box":
            return [(float(lo), float(hi)) for lo, hi in zip(self.a, self.b)]
        if self.kind in ("uniform_pm1_cube", "uniform_ball", "uniform_sphere"):
            return [(-1.0, 1.0)] * self.n
        if self.kind == "uniform_simplex":
            return [(0.0, 1.0)] * self.n
        if self.kind == "gaussian_Rn":
            return [(-3.0, 3.0)] * self.n
        if self.kind == "exponential_orthant":
            return [(0.0, 4.0)] * self.n
        lo = [min(float(p[i]) for p in self.points) for i in range(self.n)]
        hi = [max(float(p[i]) for p in self.points) for i in range(self.n)]
        return list(zip(lo, hi))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        if self.kind == "lebesgue_box":
            out["a"] = [rat_str(x) for x in self.a]
            out["b"] = [rat_str(x) for x in self.b]
        if self.kind == "discrete":
            out["points"] = [[rat_str(x) for x in p] for p in self.points]
            out["weights"] = [rat_str(w) for w in self.weights]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MeasureSpec":
        kind = obj["kind"]
        n = int(obj["n"])
        if kind == "lebesgue_box":
            return cls.box(obj["a"], obj["b"])
        if kind == "discrete":
            return cls.discrete(obj["points"], obj.get("weights"))
        return cls(kind, n)


class MomentSequence:
    """Exact moments of a MeasureSpec, memoized per exponent.

    The cache is append-only, so concurrent readers are safe; at worst a
    moment is computed twice.
    """

    def __init__(self, spec: MeasureSpec):
        self.spec = spec
        self._cache: dict = {}
        self._gauss1d = [Rat(1), Rat(0)]  # standard normal 1-d moments

    @property
    def n(self) -> int:
        return self.spec.n

    def _gauss_moment_1d(self, k: int) -> Rat:
        g = self._gauss1d
        while len(g) <= k:
            p = len(g)
            g.append(g[p - 2] * (p - 1) if p % 2 == 0 else Rat(0))
        return g[k]

    def _compute(self, alpha) -> Rat:
        kind = self.spec.kind
        if kind == "gaussian_Rn":
            out = Rat(1)
            for k in alpha:
                if k % 2:
                    return Rat(0)
                out *= self._gauss_moment_1d(k)
            return out
        if kind == "exponential_orthant":
            out = Rat(1)
            for k in alpha:
                out *= math.factorial(k)
            return out
        if kind == "lebesgue_box":
            out = Rat(1)
            for k, lo, hi in zip(alpha, self.spec.a, self.spec.b):
                out *= (hi ** (k + 1) - lo ** (k + 1)) / ((k + 1) * (hi - lo))
            return out
        if kind == "uniform_pm1_cube":
            return Rat(1) if all(k % 2 == 0 for k in alpha) else Rat(0)
        if kind == "uniform_simplex":
            num = Rat(math.factorial(self.n))
            for k in alpha:
                num *= math.factorial(k)
            return num / math.factorial(self.n + sum(alpha))
        if kind in ("uniform_sphere", "uniform_ball"):
            if any(k % 2 for k in alpha):
                return Rat(0)
            tot = sum(alpha)
            num = 1
            for k in alpha:
                num *= _double_factorial_odd(k)
            den = 1
            for j in range(1, tot // 2 + 1):
                den *= self.n + 2 * j - 2
            mom = Rat(num, den)
            if kind == "uniform_ball":
                mom *= Rat(self.n, self.n + tot)
            return mom
        # discrete
        out = Rat(0)
        for pt, w in zip(self.spec.points, self.spec.weights):
            term = w
            for x, k in zip(pt, alpha):
                if k:
                    term *= x ** k
            out += term
        return out

    def moment(self, alpha) -> Rat:
        """Exact moment of the monomial with exponent tuple alpha."""
        alpha = tuple(alpha)
        if len(alpha) != self.n:
            raise ValueError(f"exponent length {len(alpha)}, expected {self.n}")
        v = self._cache.get(alpha)
        if v is None:
            v = self._compute(alpha)
            self._cache[alpha] = v
        return v

    def moment_vector(self, d: int):
        """Moments of every monomial of degree <= d, in basis order."""
        return [self.moment(e) for e in enumerate_basis(self.n, d)]

    def integrate(self, f: Polynomial) -> Rat:
        """Exact integral of a polynomial against the measure."""
        if f.n != self.n:
            raise ValueError("dimension mismatch")
        out = Rat(0)
        for e, c in f.terms.items():
            out += c * self.moment(e)
        return out

    def mean(self):
        """The support barycenter, as exact rationals."""
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            out.append(self.moment(tuple(e)))
        return tuple(out)
