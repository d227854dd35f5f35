"""Nonincreasing upper bounds for polynomial minimization over a measure's
support, one generalized eigenvalue problem per level.

Level d computes the smallest generalized eigenvalue lambda_d of the pencil
(localizing matrix of f, moment matrix), equivalently the best bound
achievable by averaging f against a squared-polynomial density of degree
2d.  The sequence lambda_d decreases to the infimum of f on the support as
d grows; on discrete supports it reaches it exactly at a finite order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._rat import Rat, rat, to_float
from .eigen import ConvergenceError, gen_eig_all, _sign_normalize
from .matrices import SymMatrix, localizing_matrix, moment_matrix, quadratic_form
from .measures import MeasureSpec, MomentSequence
from .poly import Polynomial, enumerate_basis

STATUS_OK = "ok"
STATUS_ILL = "ill_conditioned"

# monotonicity slack and eigenvalue-tie window, both relative
_MONO_RTOL = 1e-8
_TIE_RTOL = 1e-10


@dataclass
class BoundReport:
    """One hierarchy level: the bound, its dual vector and diagnostics."""

    d: int
    lam: float
    dual_coeffs: np.ndarray
    normalization: float
    residual: float
    condition_estimate: float
    status: str
    objective: Polynomial

    def csv_row(self) -> str:
        return f"{self.d},{self.lam:.12g},{self.residual:.12g},{self.status}"


def reports_to_csv(reports) -> str:
    lines = ["d,lambda,residual,status"]
    lines.extend(r.csv_row() for r in reports)
    return "\n".join(lines) + "\n"


def exact_level0(f: Polynomial, seq: MomentSequence) -> Rat:
    """The order-0 bound: the plain average of f, as an exact rational."""
    return seq.integrate(f)


def _float_pivot_relerr(b: SymMatrix, red) -> float:
    """Replay the exact elimination of B in floating point (after diagonal
    scaling) and report the worst relative pivot error.  Values >= 1 or a
    nonpositive float pivot mean a pure float factorization would have lost
    every significant digit at this order."""
    bn = b.to_numpy()
    if not np.isfinite(bn).all():
        return math.inf
    diag = np.diag(bn).copy()
    s = np.where(diag > 0, 1.0 / np.sqrt(np.where(diag > 0, diag, 1.0)), 1.0)
    bs = bn * s[:, None] * s[None, :]
    order = red.order
    work = bs[np.ix_(order, order)].copy()
    worst = 0.0
    for t in range(red.rank):
        dflt = work[t, t]
        orig = order[t]
        expected_exact = red.pivots[t] if diag[orig] <= 0 else red.pivots[t] / rat(Fraction(float(diag[orig])))
        expected = to_float(expected_exact)
        if dflt <= 0 or not math.isfinite(expected) or expected <= 0:
            return math.inf
        worst = max(worst, abs(dflt - expected) / expected)
        col = work[t + 1:, t] / dflt
        if col.size:
            work[t + 1:, t + 1:] -= np.outer(col, work[t, t + 1:])
    return worst


def _pick_dual_vector(w, vecs, red):
    """Among (near-)smallest eigenvalues, prefer the eigenvector with the
    largest constant coefficient, then the lexicographically largest one;
    keeps reports deterministic when the bottom eigenvalue is degenerate."""
    lam0 = w[0]
    window = _TIE_RTOL * max(1.0, abs(lam0))
    cands = [i for i in range(len(w)) if w[i] - lam0 <= window]
    best = None
    for i in cands:
        v = _sign_normalize(red.lift(vecs[:, i]))
        key = (round(abs(v[0]), 10), tuple(np.round(v, 10)))
        if best is None or key > best[0]:
            best = (key, v)
    return best[1]


def upper_bound(f: Polynomial, seq: MomentSequence, d: int) -> BoundReport:
    """Bound at a single level d, with the dual eigenvector and diagnostics."""
    if f.n != seq.n:
        raise ValueError("dimension mismatch between objective and measure")
    a = localizing_matrix(seq, f, d)
    b = moment_matrix(seq, d)
    try:
        w, vecs, red = gen_eig_all(a, b)
        vec = _pick_dual_vector(w, vecs, red)
        lam = float(w[0])
    except ConvergenceError:
        return BoundReport(d=d, lam=float("nan"), dual_coeffs=np.zeros(b.size),
                           normalization=0.0, residual=float("inf"),
                           condition_estimate=float("inf"), status=STATUS_ILL,
                           objective=f)
    an = a.to_numpy()
    bn = b.to_numpy()
    norm_v = float(np.linalg.norm(vec))
    denom = (np.linalg.norm(an, "fro") + abs(lam) * np.linalg.norm(bn, "fro")) * norm_v
    residual = float(np.linalg.norm(an @ vec - lam * (bn @ vec)) / denom) if denom > 0 else 0.0
    normalization = float(vec @ bn @ vec)
    cond = _float_pivot_relerr(b, red)
    status = STATUS_OK if (cond < 1.0 and residual < 1e-6 and math.isfinite(lam)) else STATUS_ILL
    return BoundReport(d=d, lam=lam, dual_coeffs=vec, normalization=normalization,
                       residual=residual, condition_estimate=cond, status=status,
                       objective=f)


def run_hierarchy(f: Polynomial, seq: MomentSequence, d_max: int, jobs: int = 1):
    """Bounds for d = 0..d_max.  Levels are independent; `jobs` > 1 runs them
    in a thread pool.  A sequential post-check flags any level that rises
    above its predecessor beyond numerical tolerance as ill-conditioned."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    ds = list(range(d_max + 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda d: upper_bound(f, seq, d), ds))
    else:
        reports = [upper_bound(f, seq, d) for d in ds]
    last_trusted = None
    for r in reports:
        if not math.isfinite(r.lam):
            r.status = STATUS_ILL
            continue
        if last_trusted is not None and r.lam > last_trusted + _MONO_RTOL * max(1.0, abs(last_trusted)):
            r.status = STATUS_ILL
        if r.status == STATUS_OK:
            last_trusted = r.lam
    return reports


@dataclass
class SosDensity:
    """A probability density g^2 / normalization with respect to the measure;
    the normalization is exact, so the density integrates to exactly 1."""

    g: Polynomial
    normalization: Rat
    d: int
    objective: Polynomial
    lam: float
    complementarity: float

    def evaluate(self, point) -> float:
        gv = self.g.evaluate([float(x) for x in (point if hasattr(point, "__len__") else [point])])
        return gv * gv / to_float(self.normalization)


@dataclass
class CandidatePoint:
    x_star: tuple
    f_value: float
    in_support: bool


def dual_density(report: BoundReport, seq: MomentSequence,
                 allow_ill_conditioned: bool = False) -> SosDensity:
    """The squared-polynomial density attaining the level-d bound."""
    if report.status != STATUS_OK and not allow_ill_conditioned:
        raise ValueError(f"report status is {report.status!r}; pass "
                         "allow_ill_conditioned=True to extract anyway")
    basis = enumerate_basis(seq.n, report.d)
    coeffs = [Rat(Fraction(float(x))) for x in report.dual_coeffs]
    g = Polynomial(seq.n, {e: c for e, c in zip(basis.exponents, coeffs) if c != 0})
    if g.is_zero():
        raise ValueError("degenerate (zero) dual eigenvector")
    norm = quadratic_form(moment_matrix(seq, report.d), coeffs)
    if norm == 0:
        raise ValueError("dual eigenvector has zero mass against the measure")
    value = quadratic_form(localizing_matrix(seq, report.objective, report.d), coeffs)
    compl = abs(to_float(value / norm) - report.lam)
    return SosDensity(g=g, normalization=norm, d=report.d,
                      objective=report.objective, lam=report.lam,
                      complementarity=compl)


def extract_candidate(density: SosDensity, seq: MomentSequence) -> CandidatePoint:
    """Barycenter of the density; by Jensen's inequality its objective value
    is at most the bound whenever the objective and support are convex."""
    n = seq.n
    g2 = density.g * density.g
    coords = []
    for i in range(n):
        num = Rat(0)
        for e, c in g2.terms.items():
            lifted = list(e)
            lifted[i] += 1
            num += c * seq.moment(tuple(lifted))
        coords.append(to_float(num / density.normalization))
    x_star = tuple(coords)
    f_value = density.objective.evaluate([float(x) for x in x_star])
    return CandidatePoint(x_star=x_star, f_value=f_value,
                          in_support=seq.spec.contains(x_star))


def density_profile(density: SosDensity, grid) -> np.ndarray:
    """Density values on a grid of points (array of scalars when n == 1,
    else an iterable of points).  Values are squares, hence nonnegative."""
    pts = np.asarray(grid, dtype=float)
    if pts.ndim == 1:
        if density.g.n != 1:
            raise ValueError("scalar grid only valid for univariate densities")
        pts = pts[:, None]
    return np.array([density.evaluate(p) for p in pts])
