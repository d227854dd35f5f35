"""Moment and localizing matrices, assembled exactly.

A matrix of order d is indexed by the graded monomial basis of degree <= d.
Entries depend only on the sum of the row and column exponents (a generalized
Hankel structure), so assembly first computes one value per distinct exponent
sum and then fills the lower triangle by lookup.
"""

from __future__ import annotations

import re

import numpy as np

from ._rat import Rat, rat, rat_str, to_float
from .measures import MomentSequence
from .poly import MonomialBasis, Polynomial, enumerate_basis


class SymMatrix:
    """Dense symmetric matrix in lower-triangle storage.

    Entries are either all exact rationals or all floats (the `exact` flag).
    An optional MonomialBasis records what the rows/columns index.
    """

    __slots__ = ("size", "rows", "basis", "exact")

    def __init__(self, rows, basis: MonomialBasis = None, exact: bool = True):
        self.rows = rows
        self.size = len(rows)
        self.basis = basis
        self.exact = exact
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise ValueError("rows must form a lower triangle")
        if basis is not None and basis.size != self.size:
            raise ValueError("basis size does not match matrix size")

    @classmethod
    def from_dense(cls, dense, basis=None, exact=True, check_symmetry=True):
        n = len(dense)
        conv = rat if exact else float
        if check_symmetry:
            for i in range(n):
                for j in range(i):
                    if exact:
                        if rat(dense[i][j]) != rat(dense[j][i]):
                            raise ValueError("matrix is not symmetric")
                    elif dense[i][j] != dense[j][i]:
                        raise ValueError("matrix is not symmetric")
        rows = [[conv(dense[i][j]) for j in range(i + 1)] for i in range(n)]
        return cls(rows, basis=basis, exact=exact)

    def get(self, i: int, j: int):
        return self.rows[i][j] if j <= i else self.rows[j][i]

    def to_numpy(self) -> np.ndarray:
        out = np.empty((self.size, self.size))
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                out[i, j] = out[j, i] = to_float(v)
        return out

    def max_abs(self):
        """Largest absolute entry (exact when the matrix is exact)."""
        best = Rat(0) if self.exact else 0.0
        for row in self.rows:
            for v in row:
                a = -v if v < 0 else v
                if a > best:
                    best = a
        return best

    def dump_triplets(self) -> str:
        """Plain-text lower-triangle triplets "i j value", one per line."""
        lines = []
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                val = rat_str(v) if self.exact else repr(v)
                lines.append(f"{i} {j} {val}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text: str, exact: bool = True) -> "SymMatrix":
        entries = {}
        size = 0
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            i_s, j_s, v_s = line.split()
            i, j = int(i_s), int(j_s)
            if j > i:
                i, j = j, i
            entries[(i, j)] = rat(v_s) if exact else float(v_s)
            size = max(size, i + 1)
        zero = Rat(0) if exact else 0.0
        rows = [[entries.get((i, j), zero) for j in range(i + 1)] for i in range(size)]
        return cls(rows, exact=exact)

    def __eq__(self, other):
        return (isinstance(other, SymMatrix) and self.size == other.size
                and all(self.rows[i][j] == other.rows[i][j]
                        for i in range(self.size) for j in range(i + 1)))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"SymMatrix(size={self.size}, {kind})"


def _signed_moments(seq: MomentSequence, f: Polynomial, basis: MonomialBasis) -> dict:
    """One value L(f * x^s) per distinct exponent sum s reachable from the basis."""
    fterms = list(f.terms.items())
    out = {}
    for s in enumerate_basis(basis.n, 2 * basis.d):
        acc = Rat(0)
        for g, c in fterms:
            acc += c * seq.moment(tuple(a + b for a, b in zip(s, g)))
        out[s] = acc
    return out


def moment_matrix(seq: MomentSequence, d: int) -> SymMatrix:
    """Matrix of moments y_{a+b} over the basis of degree <= d."""
    basis = enumerate_basis(seq.n, d)
    exps = basis.exponents
    rows = []
    for i, ei in enumerate(exps):
        rows.append([seq.moment(tuple(a + b for a, b in zip(ei, exps[j])))
                     for j in range(i + 1)])
    return SymMatrix(rows, basis=basis, exact=True)


def localizing_matrix(seq: MomentSequence, f: Polynomial, d: int) -> SymMatrix:
    """Matrix with entries L(f * x^{a+b}) over the basis of degree <= d."""
    if f.n != seq.n:
        raise ValueError("dimension mismatch")
    basis = enumerate_basis(seq.n, d)
    z = _signed_moments(seq, f, basis)
    exps = basis.exponents
    rows = []
    for i, ei in enumerate(exps):
        rows.append([z[tuple(a + b for a, b in zip(ei, exps[j]))]
                     for j in range(i + 1)])
    return SymMatrix(rows, basis=basis, exact=True)


def quadratic_form(m: SymMatrix, g):
    """g^T M g; exact when both the matrix and the vector are exact."""
    if len(g) != m.size:
        raise ValueError(f"vector length {len(g)} does not match matrix size {m.size}")
    if m.exact and not any(isinstance(x, float) for x in g):
        vec = [rat(x) for x in g]
        total = Rat(0)
        for i, row in enumerate(m.rows):
            gi = vec[i]
            total += row[i] * gi * gi
            if gi != 0:
                s = Rat(0)
                for j in range(i):
                    if vec[j] != 0:
                        s += row[j] * vec[j]
                total += 2 * gi * s
        return total
    vec = np.asarray([float(x) for x in g])
    return float(vec @ m.to_numpy() @ vec)
