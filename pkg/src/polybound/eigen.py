"""Symmetric linear algebra kernel.

Four layers, from exact to floating point:

* ``ldlt``: exact rational LDL^T with symmetric pivoting in natural order
  (rows are swapped only when the current diagonal entry vanishes).  For a
  PSD matrix the factorization always completes, with zero pivots confined
  to the trailing positions.  An indefinite matrix either produces a
  negative pivot or gets stuck on an all-zero diagonal with a nonzero
  off-diagonal entry; the latter is recorded as a 2x2 block certificate
  (such a block always has a negative eigenvalue), since no purely diagonal
  D exists in that case.

* ``is_psd``: verdict with an exact rational witness direction when the
  matrix is not PSD beyond the requested relative margin.

* ``sym_eig_smallest``: cyclic Jacobi iteration; quadratically convergent,
  capped at 30 sweeps.

* ``gen_eig_smallest``: the definite pencil (A, B) is reduced by factoring
  B = L D L^T exactly and applying the same congruence to A in rational
  arithmetic, then dividing by sqrt(D) on the range of B.  All rounding is
  deferred to one well-scaled dense symmetric eigenproblem; components of
  eigenvectors in the kernel of B are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._rat import Rat, rat, to_float
from .matrices import SymMatrix, quadratic_form


class ConvergenceError(RuntimeError):
    """Eigensolver failed to converge (usually extreme ill-conditioning)."""


class NotPositiveSemidefiniteError(ValueError):
    """The right-hand matrix of a pencil must be PSD."""


def _to_rat_rows(m: SymMatrix):
    if m.exact:
        return [[Rat(v) for v in row] for row in m.rows]
    # floats are converted exactly (binary expansion), so verdicts about the
    # given floating matrix are still exact
    return [[Rat(Fraction(v)) for v in row] for row in m.rows]


@dataclass
class LdltFactorization:
    """P^T A P = L D L^T, exact.

    order: elimination order (original indices); pivots: the nonzero
    diagonal entries of D in elimination order; lcols: the strictly-lower
    multipliers of each eliminated column as (original_index, value) pairs.
    When `stuck` is set the factorization is partial: the trailing block had
    an identically zero diagonal but a nonzero off-diagonal entry (p, q, a),
    which certifies indefiniteness.
    """

    size: int
    order: list
    pivots: list
    lcols: list
    stuck: tuple = None
    matrix: SymMatrix = None

    @property
    def rank(self) -> int:
        return len(self.pivots) + (2 if self.stuck else 0)

    @property
    def indefinite(self) -> bool:
        return self.stuck is not None or any(p < 0 for p in self.pivots)

    @property
    def complete(self) -> bool:
        return self.stuck is None

    @property
    def diag(self):
        """The diagonal of D (only defined for complete factorizations)."""
        if not self.complete:
            raise ValueError("no diagonal D: factorization hit a 2x2 block")
        return list(self.pivots) + [Rat(0)] * (self.size - len(self.pivots))

    def _position(self):
        return {idx: t for t, idx in enumerate(self.order)}

    def lower_unit(self):
        """Dense unit lower-triangular L in elimination coordinates."""
        n = self.size
        pos = self._position()
        L = [[Rat(0)] * n for _ in range(n)]
        for t in range(n):
            L[t][t] = Rat(1)
        for t, col in enumerate(self.lcols):
            for idx, m in col:
                L[pos[idx]][t] = m
        return L

    def reconstruct(self) -> SymMatrix:
        """Rebuild the original matrix from the factors (for verification)."""
        if not self.complete:
            raise ValueError("cannot reconstruct from a partial factorization")
        n = self.size
        L = self.lower_unit()
        D = self.diag
        dense = [[Rat(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = Rat(0)
                for t in range(min(i, j) + 1):
                    if D[t] != 0 and L[i][t] != 0 and L[j][t] != 0:
                        s += L[i][t] * D[t] * L[j][t]
                dense[i][j] = dense[j][i] = s
        # undo the permutation
        out = [[Rat(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[self.order[i]][self.order[j]] = dense[i][j]
        return SymMatrix.from_dense(out, exact=True, check_symmetry=False)

    def solve_lt(self, rhs):
        """Solve L^T w = rhs exactly (rhs indexed in elimination order)."""
        n = self.size
        pos = self._position()
        w = [Rat(x) for x in rhs]
        for t in range(min(len(self.lcols), n) - 1, -1, -1):
            acc = w[t]
            for idx, m in self.lcols[t]:
                wp = w[pos[idx]]
                if wp != 0:
                    acc -= m * wp
            w[t] = acc
        return w

    def negative_direction(self):
        """An exact vector v with v^T A v < 0, or None if no certificate."""
        target = None
        rhs = [Rat(0)] * self.size
        for t, p in enumerate(self.pivots):
            if p < 0:
                rhs[t] = Rat(1)
                target = t
                break
        if target is None:
            if self.stuck is None:
                return None
            p_idx, q_idx, a = self.stuck
            pos = self._position()
            rhs[pos[p_idx]] = Rat(1)
            rhs[pos[q_idx]] = Rat(-1) if a > 0 else Rat(1)
        w = self.solve_lt(rhs)
        v = [Rat(0)] * self.size
        for t, idx in enumerate(self.order):
            v[idx] = w[t]
        return v


def ldlt(a: SymMatrix) -> LdltFactorization:
    """Exact LDL^T with symmetric pivoting (see module docstring)."""
    work = _to_rat_rows(a)
    n = a.size
    remaining = list(range(n))
    order, pivots, lcols = [], [], []
    stuck = None

    def get(p, q):
        return work[p][q] if q <= p else work[q][p]

    while remaining:
        k = None
        for pos_i, cand in enumerate(remaining):
            if work[cand][cand] != 0:
                k = cand
                remaining.pop(pos_i)
                break
        if k is None:
            # zero diagonal everywhere; any nonzero off-diagonal entry
            # certifies indefiniteness and blocks a diagonal factorization
            best = None
            for ii, p in enumerate(remaining):
                for q in remaining[ii + 1:]:
                    v = get(p, q)
                    if v != 0 and (best is None or abs(v) > abs(best[2])):
                        best = (p, q, v)
            if best is not None:
                stuck = best
                order.extend([best[0], best[1]])
                order.extend(i for i in remaining if i not in (best[0], best[1]))
            else:
                order.extend(remaining)
            break
        d = work[k][k]
        order.append(k)
        pivots.append(d)
        col = [(i, get(i, k) / d) for i in remaining if get(i, k) != 0]
        lcols.append(col)
        for i, mi in col:
            wi = work[i]
            for j in remaining:
                if j > i:
                    continue
                bkj = get(k, j)
                if bkj:
                    wi[j] -= mi * bkj
    return LdltFactorization(size=n, order=order, pivots=pivots, lcols=lcols,
                             stuck=stuck, matrix=a)


@dataclass
class PsdVerdict:
    psd: bool
    witness: list = None       # exact rational direction, integer-scaled
    witness_value: Rat = None  # exact h^T A h, negative for a counterexample

    def __bool__(self):
        return self.psd


def _integerize(v):
    """Scale an exact rational vector to coprime integers (tidier certificates)."""
    dens = [Fraction(x).denominator for x in v if x != 0]
    if not dens:
        return [Rat(0) for _ in v]
    scale = Rat(math.lcm(*dens))
    ints = [int(x * scale) for x in v]
    g = math.gcd(*(abs(i) for i in ints))
    if g > 1:
        ints = [i // g for i in ints]
    return [Rat(i) for i in ints]


def is_psd(a: SymMatrix, tol=Rat(0)) -> PsdVerdict:
    """PSD test with an exact witness on failure.

    A counterexample h is only reported when h^T A h clears a relative
    margin of tol; the margin is measured in the diagonally scaled metric
    (entries divided by sqrt(|A_ii| |A_jj|)), which keeps it meaningful for
    matrices whose entries span many orders of magnitude.  Near-boundary
    matrices come back `psd`.  With tol=0 the verdict is the exact
    mathematical one.
    """
    tol = rat(tol)
    if not a.exact:
        a = SymMatrix([[Rat(Fraction(v)) for v in row] for row in a.rows],
                      basis=a.basis, exact=True)
    fac = ldlt(a)
    if not fac.indefinite:
        return PsdVerdict(True)
    n = a.size
    dvec = [abs(a.rows[i][i]) if a.rows[i][i] != 0 else Rat(1) for i in range(n)]
    # squared scaled norm of the matrix, exact (avoids irrational sqrt)
    smax2 = Rat(0)
    for i in range(n):
        for j in range(i + 1):
            v = a.rows[i][j]
            if v:
                ratio = (v * v) / (dvec[i] * dvec[j])
                if ratio > smax2:
                    smax2 = ratio

    def margin_ok(v, val):
        # val < -tol * S * N with S^2 = smax2, N = sum d_i v_i^2, all exact
        if val >= 0:
            return False
        norm2 = sum((dvec[i] * v[i] * v[i] for i in range(n)), Rat(0))
        return val * val > tol * tol * smax2 * norm2 * norm2

    best = None
    v = fac.negative_direction()
    if v is not None:
        v = _integerize(v)
        val = quadratic_form(a, v)
        best = (v, val)
        if margin_ok(v, val):
            return PsdVerdict(False, v, val)
    if tol > 0:
        # the LDLT witness was weak; try the bottom eigenvector of the
        # scaled float matrix, rationalized and re-verified exactly
        sroot = [math.sqrt(to_float(x)) for x in dvec]
        scaled = np.empty((n, n))
        for i in range(n):
            for j in range(i + 1):
                scaled[i, j] = scaled[j, i] = to_float(a.rows[i][j]) / (sroot[i] * sroot[j])
        try:
            w, vecs = _jacobi(scaled)
        except (ConvergenceError, ValueError):
            w = None
        if w is not None and w[0] < 0:
            unscaled = [float(vecs[i, 0]) / sroot[i] for i in range(n)]
            top = max(abs(x) for x in unscaled)
            if top > 0:
                unscaled = [x / top for x in unscaled]
            for cap in (10 ** 6, 10 ** 12):
                cand = [Rat(Fraction(x).limit_denominator(cap)) for x in unscaled]
                if all(x == 0 for x in cand):
                    continue
                cand = _integerize(cand)
                val = quadratic_form(a, cand)
                if val < 0 and (best is None or _stronger(cand, val, best, dvec)):
                    best = (cand, val)
                if margin_ok(cand, val):
                    return PsdVerdict(False, cand, val)
    return PsdVerdict(True)


def _stronger(cand, val, best, dvec):
    """Compare scaled Rayleigh quotients of two negative witnesses."""
    bnorm = sum((dvec[i] * x * x for i, x in enumerate(best[0])), Rat(0))
    cnorm = sum((dvec[i] * x * x for i, x in enumerate(cand)), Rat(0))
    return val * bnorm < best[1] * cnorm


@dataclass
class EigenResult:
    value: float
    vector: np.ndarray
    residual: float


def _jacobi(a: np.ndarray, max_sweeps: int = 30, tol: float = 1e-14):
    """Cyclic Jacobi with threshold skipping.

    Returns (eigenvalues ascending, eigenvector columns).  Raises
    ConvergenceError if the off-diagonal mass has not collapsed after the
    sweep cap, which in practice only happens for matrices with entries so
    extreme that the float representation itself is meaningless.
    """
    m = a.shape[0]
    if not np.isfinite(a).all():
        raise ConvergenceError("matrix contains non-finite entries")
    a = a.copy()
    v = np.eye(m)
    if m == 1:
        return a[0, :1].copy(), v
    norm = float(np.linalg.norm(a, "fro"))
    if norm == 0.0:
        return np.zeros(m), v
    converged = False
    for _ in range(max_sweeps):
        abs_off = np.abs(a - np.diag(np.diag(a)))
        if abs_off.max() <= tol * norm:
            converged = True
            break
        thresh = max(tol * norm, 1e-2 * abs_off.max() / m)
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if abs(apq) <= thresh:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p].copy()
                rq = a[q].copy()
                a[p] = c * rp - s * rq
                a[q] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        abs_off = np.abs(a - np.diag(np.diag(a)))
        converged = abs_off.max() <= math.sqrt(tol) * norm
    if not converged:
        raise ConvergenceError("Jacobi sweep cap reached without convergence")
    w = np.diag(a).copy()
    idx = np.argsort(w, kind="stable")
    return w[idx], v[:, idx]


def _sign_normalize(vec: np.ndarray) -> np.ndarray:
    nrm = float(np.linalg.norm(vec))
    if nrm == 0.0:
        return vec
    for x in vec:
        if abs(x) > 1e-12 * nrm:
            return -vec if x < 0 else vec
    return vec


def sym_eig_smallest(a) -> EigenResult:
    """Smallest eigenpair of a dense symmetric matrix (cyclic Jacobi)."""
    mat = a.to_numpy() if isinstance(a, SymMatrix) else np.asarray(a, dtype=float)
    w, v = _jacobi(mat)
    vec = _sign_normalize(v[:, 0])
    residual = float(np.linalg.norm(mat @ vec - w[0] * vec))
    return EigenResult(value=float(w[0]), vector=vec, residual=residual)


class ReducedPencil:
    """Exact congruence reduction of a pencil (A, B) with B PSD.

    After factoring B = L D L^T (permuted), the same elimination is applied
    to A exactly; on the r-dimensional range of B the problem becomes a
    standard symmetric eigenproblem for C = D_r^{-1/2} K_r D_r^{-1/2}, where
    the only rounding is the final division by sqrt(D).
    """

    def __init__(self, a: SymMatrix, b: SymMatrix):
        if a.size != b.size:
            raise ValueError("pencil matrices must have equal size")
        if a.basis is not None and b.basis is not None and a.basis.exponents != b.basis.exponents:
            raise ValueError("pencil matrices are indexed by different bases")
        aw = _to_rat_rows(a)
        bw = _to_rat_rows(b)
        n = a.size
        remaining = list(range(n))
        piv, order, lcols = [], [], []

        def bget(p, q):
            return bw[p][q] if q <= p else bw[q][p]

        def aget(p, q):
            return aw[p][q] if q <= p else aw[q][p]

        while remaining:
            k = None
            for pos_i, cand in enumerate(remaining):
                dv = bw[cand][cand]
                if dv != 0:
                    if dv < 0:
                        raise NotPositiveSemidefiniteError("negative pivot in B")
                    k = cand
                    remaining.pop(pos_i)
                    break
            if k is None:
                # every remaining diagonal is zero; PSD forces the rest of B
                # to vanish as well
                for ii, p in enumerate(remaining):
                    for q in remaining[ii + 1:]:
                        if bget(p, q) != 0:
                            raise NotPositiveSemidefiniteError(
                                "B has a zero diagonal with nonzero off-diagonal")
                break
            d = bw[k][k]
            piv.append(d)
            order.append(k)
            ms = [(i, bget(i, k) / d) for i in remaining if bget(i, k) != 0]
            msd = dict(ms)
            lcols.append(ms)
            for i, mi in ms:
                wi = bw[i]
                for j in remaining:
                    if j > i:
                        continue
                    bkj = bget(k, j)
                    if bkj:
                        wi[j] -= mi * bkj
            # congruence on A touches every live row/column
            arow = [aget(k, j) for j in range(n)]
            akk = arow[k]
            nz = [j for j in range(n) if arow[j] and j not in msd and j != k]
            for i, mi in ms:
                ai = aw[i]
                for q in nz:
                    if q <= i:
                        ai[q] -= mi * arow[q]
                    else:
                        aw[q][i] -= mi * arow[q]
                if akk:
                    if k <= i:
                        ai[k] -= mi * akk
                    else:
                        aw[k][i] -= mi * akk
            for ii in range(len(ms)):
                i, mi = ms[ii]
                for jj in range(ii + 1):
                    j, mj = ms[jj]
                    p, q = (i, j) if j <= i else (j, i)
                    aw[p][q] = aw[p][q] - mi * arow[j] - mj * arow[i] + mi * mj * akk

        r = len(piv)
        if r == 0:
            raise ValueError("B is the zero matrix; the pencil is degenerate")
        self.size = n
        self.rank = r
        self.pivots = piv
        placed = set(order)
        self.order = order + [i for i in range(n) if i not in placed]
        self.lcols = lcols
        c = np.empty((r, r))
        for x in range(r):
            px = self.order[x]
            for y in range(x + 1):
                val = aget(px, self.order[y])
                if val == 0:
                    c[x, y] = c[y, x] = 0.0
                else:
                    f = to_float((val * val) / (piv[x] * piv[y]))
                    c[x, y] = c[y, x] = math.copysign(math.sqrt(f) if math.isfinite(f) else math.inf,
                                                      1.0 if val > 0 else -1.0)
        self.c = c

    def condition_estimate(self) -> float:
        hi = max(self.pivots)
        lo = min(self.pivots)
        return to_float(hi / lo)

    def lift(self, u: np.ndarray) -> np.ndarray:
        """Map a reduced eigenvector back to original coordinates; the
        kernel-of-B components are zero."""
        n, r = self.size, self.rank
        pos = {idx: t for t, idx in enumerate(self.order)}
        w = [0.0] * n
        for t in range(r):
            w[t] = float(u[t]) / math.sqrt(to_float(self.pivots[t]))
        for t in range(r - 1, -1, -1):
            acc = w[t]
            for idx, m in self.lcols[t]:
                wp = w[pos[idx]]
                if wp != 0.0:
                    acc -= to_float(m) * wp
            w[t] = acc
        v = np.zeros(n)
        for t, idx in enumerate(self.order):
            v[idx] = w[t]
        return v


def gen_eig_all(a: SymMatrix, b: SymMatrix):
    """All generalized eigenvalues of (A, B) on the range of B, ascending,
    plus the reduction object and reduced eigenvectors."""
    red = ReducedPencil(a, b)
    w, v = _jacobi(red.c)
    return w, v, red


def gen_eig_smallest(a: SymMatrix, b: SymMatrix) -> EigenResult:
    """Smallest generalized eigenvalue of the pencil (A, B), B PSD."""
    w, v, red = gen_eig_all(a, b)
    vec = _sign_normalize(red.lift(v[:, 0]))
    lam = float(w[0])
    an = a.to_numpy()
    bn = b.to_numpy()
    vn = float(np.linalg.norm(vec))
    denom = (np.linalg.norm(an, "fro") + abs(lam) * np.linalg.norm(bn, "fro")) * vn
    residual = float(np.linalg.norm(an @ vec - lam * (bn @ vec)) / denom) if denom > 0 else 0.0
    return EigenResult(value=lam, vector=vec, residual=residual)
