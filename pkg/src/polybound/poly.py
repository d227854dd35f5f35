"""Sparse multivariate polynomials over exact rationals, and the graded
monomial basis used to index all moment-type matrices.

Exponents are plain tuples of non-negative ints, one entry per variable.
The basis order is a serialization contract shared by every matrix in the
package: monomials sorted by total degree, ties broken by descending
lexicographic comparison of the exponent tuple, so for n=2, d=2 the order is
(0,0), (1,0), (0,1), (2,0), (1,1), (0,2).  The basis of order d is a prefix
of the basis of any higher order, which lets matrices grow incrementally.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from ._rat import Rat, rat, rat_str, to_float

Exponent = tuple

_NUM_RE = re.compile(r"[+-]?(?:\d+/\d+|\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)")
_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


class MonomialBasis:
    """All monomials of total degree <= d in n variables, in graded order."""

    def __init__(self, n: int, d: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if d < 0:
            raise ValueError("degree must be >= 0")
        self.n = n
        self.d = d
        exps = []
        for tot in range(d + 1):
            exps.extend(_compositions(tot, n))
        self.exponents = tuple(exps)
        self.index = {e: i for i, e in enumerate(exps)}
        self.size = len(exps)
        assert self.size == math.comb(n + d, d)

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    def __repr__(self):
        return f"MonomialBasis(n={self.n}, d={self.d}, size={self.size})"


def enumerate_basis(n: int, d: int) -> MonomialBasis:
    """Graded monomial basis of the polynomials of degree <= d in n variables."""
    return MonomialBasis(n, d)


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to exact rational
    coefficients.  Zero coefficients are never stored; the zero polynomial
    has an empty term map and, by convention, degree 0.

    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = rat(c)
            if c != 0:
                clean[e] = clean.get(e, Rat(0)) + c
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: rat(c)})

    @classmethod
    def variable(cls, i: int, n: int) -> "Polynomial":
        """The monomial x_{i+1} (0-based index i) in n variables."""
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Rat(1)})

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e) -> Rat:
        return self.terms.get(tuple(e), Rat(0))

    def sorted_terms(self):
        """Terms in the graded basis order (degree, then descending lex)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def coeff_vector(self, basis: MonomialBasis):
        """Coefficients aligned with a monomial basis; errors on overflow."""
        if basis.n != self.n:
            raise ValueError("basis dimension mismatch")
        if self.degree > basis.d:
            raise ValueError("polynomial degree exceeds basis degree")
        vec = [Rat(0)] * basis.size
        for e, c in self.terms.items():
            vec[basis.index[e]] = c
        return vec

    # -- arithmetic ----------------------------------------------------

    def _check_same(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._check_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Rat(0)) + c
        return Polynomial(self.n, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = rat(other)
            return Polynomial(self.n, {e: c * v for e, v in self.terms.items()})
        self._check_same(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Rat(0)) + c1 * c2
        return Polynomial(self.n, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, lam) -> "Polynomial":
        """Return self - lam; only the constant coefficient changes."""
        return self - Polynomial.constant(self.n, lam)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset((e, Fraction(c)) for e, c in self.terms.items())))

    # -- evaluation ----------------------------------------------------

    def evaluate(self, point):
        """Evaluate at a point.  Exact when every coordinate is exact
        (int/Fraction/str), float when any coordinate is a float."""
        if len(point) != self.n:
            raise ValueError(f"point has dimension {len(point)}, expected {self.n}")
        if any(isinstance(x, float) for x in point):
            pt = [float(x) for x in point]
            total = 0.0
            for e, c in self.terms.items():
                m = to_float(c)
                for x, k in zip(pt, e):
                    if k:
                        m *= x ** k
                total += m
            return total
        pt = [rat(x) for x in point]
        total = Rat(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(pt, e):
                if k:
                    m *= x ** k
            total += m
        return total

    __call__ = evaluate

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            body = f"{rat_str(abs(c))} * {mono}" if mono else rat_str(abs(c))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Polynomial":
        """Parse the to_text format (and light variants: optional '*',
        optional '^1', bare monomials).  Exact round-trip for rationals."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        pos = 0
        raw = []  # (coef, {var_index: exp})
        max_var = 0
        while pos < len(s):
            while pos < len(s) and s[pos].isspace():
                pos += 1
            if pos >= len(s):
                break
            sign = 1
            if s[pos] in "+-":
                if s[pos] == "-":
                    sign = -1
                pos += 1
                while pos < len(s) and s[pos].isspace():
                    pos += 1
            m = _NUM_RE.match(s, pos)
            if m and m.start() == pos:
                coef = rat(m.group(0))
                pos = m.end()
            else:
                coef = Rat(1)
            coef *= sign
            powers = {}
            while True:
                while pos < len(s) and (s[pos].isspace() or s[pos] == "*"):
                    pos += 1
                mv = _VAR_RE.match(s, pos)
                if not mv:
                    break
                idx = int(mv.group(1))
                if idx < 1:
                    raise ValueError(f"bad variable index in {text!r}")
                k = int(mv.group(2)) if mv.group(2) else 1
                powers[idx] = powers.get(idx, 0) + k
                max_var = max(max_var, idx)
                pos = mv.end()
            if not m and not powers:
                raise ValueError(f"cannot parse polynomial text at {s[pos:pos + 20]!r}")
            raw.append((coef, powers))
        if n is None:
            n = max(max_var, 1)
        elif max_var > n:
            raise ValueError(f"variable x{max_var} exceeds dimension n={n}")
        terms = {}
        for coef, powers in raw:
            e = [0] * n
            for idx, k in powers.items():
                e[idx - 1] = k
            e = tuple(e)
            terms[e] = terms.get(e, Rat(0)) + coef
        return cls(n, terms)

    def to_json_terms(self) -> list:
        return [{"exps": list(e), "coef": rat_str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json_terms(cls, n: int, terms: list) -> "Polynomial":
        out = {}
        for t in terms:
            e = tuple(int(x) for x in t["exps"])
            out[e] = out.get(e, Rat(0)) + rat(t["coef"])
        return cls(n, out)

    def __repr__(self):
        return f"Polynomial({self.n}, {self.to_text()!r})"
