"""Nonnegativity certification and copositivity testing.

A polynomial f is nonnegative on the support of the measure exactly when
every matrix with entries L(f * x^{a+b}) is PSD, one matrix per order k.
Checking orders 0..k_max therefore gives a one-sided test: a failure yields
a concrete polynomial h with integral(h^2 f) < 0, an independently
verifiable refutation; success only certifies membership in the order-k_max
outer approximation of the nonnegativity cone, never nonnegativity itself.

Copositivity of a symmetric matrix Q reduces to nonnegativity of x^T Q x on
the nonnegative orthant, tested through the same hierarchy against the
exponential measure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ._rat import Rat, rat, rat_str, to_float
from .eigen import is_psd
from .hierarchy import upper_bound
from .matrices import localizing_matrix
from .measures import MeasureSpec, MomentSequence
from .poly import Polynomial, enumerate_basis

MEMBER = "member_up_to"
COUNTEREXAMPLE = "counterexample"

DEFAULT_TOL = Rat(1, 10 ** 8)


@dataclass
class Certificate:
    """Outcome of a nonnegativity scan up to order k_reached.

    For a counterexample, `witness` is a polynomial with exact integer
    coefficients and `witness_value` the exact rational value of
    integral(witness^2 * f), which is negative.
    """

    verdict: str
    k_reached: int
    witness: Polynomial = None
    witness_value: Rat = None

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "k": self.k_reached}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_terms()
            out["witness_value"] = rat_str(self.witness_value)
        return out


def cone_membership(f: Polynomial, seq: MomentSequence, k: int) -> bool:
    """Exact single-level test: is the order-k matrix of f PSD?"""
    return bool(is_psd(localizing_matrix(seq, f, k), tol=Rat(0)))


def _witness_candidates(mk, mom, psd_verdict):
    """Exact rational directions that may certify indefiniteness: the
    factorization witness plus rationalizations of the bottom eigenvector of
    the pencil (mk, mom), whose exact reduction stays reliable even when the
    raw matrix entries span dozens of orders of magnitude."""
    from fractions import Fraction

    from ._rat import Rat
    from .eigen import ConvergenceError, _integerize, gen_eig_all

    cands = []
    if psd_verdict.witness is not None:
        cands.append(psd_verdict.witness)
    try:
        w, vecs, red = gen_eig_all(mk, mom)
        if w[0] < 0:
            lifted = red.lift(vecs[:, 0])
            top = max(abs(float(x)) for x in lifted)
            if top > 0:
                scaled = [float(x) / top for x in lifted]
                for cap in (10 ** 6, 10 ** 12):
                    cand = [Rat(Fraction(x).limit_denominator(cap)) for x in scaled]
                    if any(c != 0 for c in cand):
                        cands.append(_integerize(cand))
    except (ConvergenceError, ValueError):
        pass
    return cands


def certify_nonnegativity(f: Polynomial, seq: MomentSequence, k_max: int,
                          tol=DEFAULT_TOL) -> Certificate:
    """Scan orders k = 0..k_max; stop at the first refutation.

    A level refutes only when some exact rational h satisfies
    integral(h^2 f) < -tol * scale(f) * integral(h^2), with scale(f) the
    larger of 1 and the L2 norm of f against the measure; quadratic forms
    closer to zero than that are treated as inconclusive, so polynomials on
    the boundary of nonnegativity are reported as members.  Witnesses are
    re-verified through an independent path (direct integration of the
    expanded polynomial h^2 f) before being reported.
    """
    if f.n != seq.n:
        raise ValueError("dimension mismatch")
    tol_f = to_float(rat(tol))
    scale_f = max(1.0, math.sqrt(max(0.0, to_float(seq.integrate(f * f)))))
    for k in range(k_max + 1):
        mk = localizing_matrix(seq, f, k)
        verdict = is_psd(mk, tol=Rat(0))
        if verdict.psd:
            continue
        mom = moment_matrix(seq, k)
        best = None
        for cand in _witness_candidates(mk, mom, verdict):
            val = quadratic_form(mk, cand)
            mass = quadratic_form(mom, cand)
            if val >= 0 or mass <= 0:
                continue
            ratio = to_float(val / mass)
            if best is None or ratio < best[0]:
                best = (ratio, cand, val)
        if best is not None and best[0] < -tol_f * scale_f:
            _, cand, val = best
            basis = enumerate_basis(seq.n, k)
            h = Polynomial(seq.n, {e: c for e, c in zip(basis.exponents, cand)
                                   if c != 0})
            direct = seq.integrate(h * h * f)
            if direct != val:
                raise AssertionError("witness re-verification mismatch")
            return Certificate(verdict=COUNTEREXAMPLE, k_reached=k,
                               witness=h, witness_value=direct)
    return Certificate(verdict=MEMBER, k_reached=k_max)


@dataclass
class CopositivityReport:
    matrix: tuple
    d_max: int
    lambdas: list
    refuted_at: int = None

    @property
    def conclusion(self) -> str:
        if self.refuted_at is not None:
            return f"not_copositive({self.refuted_at})"
        return f"no_refutation_up_to({self.d_max})"

    @property
    def is_refuted(self) -> bool:
        return self.refuted_at is not None

    def to_json(self) -> dict:
        return {
            "matrix": [[rat_str(v) for v in row] for row in self.matrix],
            "d_max": self.d_max,
            "lambdas": [f"{v:.12g}" for v in self.lambdas],
            "conclusion": self.conclusion,
        }


def quadratic_form_poly(q) -> Polynomial:
    """The quadratic form x^T Q x of a symmetric matrix as a polynomial."""
    n = len(q)
    rows = [[rat(v) for v in row] for row in q]
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix must be symmetric")
    terms = {}
    for i in range(n):
        for j in range(n):
            if rows[i][j] == 0:
                continue
            e = [0] * n
            e[i] += 1
            e[j] += 1
            e = tuple(e)
            terms[e] = terms.get(e, Rat(0)) + rows[i][j]
    return Polynomial(n, terms)


def copositivity_test(q, d_max: int, tol: float = 1e-8) -> CopositivityReport:
    """Hierarchy test for copositivity over the nonnegative orthant.

    Any level with a bound below -tol (relative to the matrix scale)
    refutes copositivity outright; absence of a refutation up to d_max is
    consistent with, but does not prove, copositivity.
    """
    rows = tuple(tuple(rat(v) for v in row) for row in q)
    f = quadratic_form_poly(rows)
    seq = MomentSequence(MeasureSpec.exponential_orthant(len(rows)))
    scale = max((abs(to_float(v)) for row in rows for v in row), default=0.0)
    cutoff = -tol * max(1.0, scale)
    lambdas = []
    refuted_at = None
    for d in range(d_max + 1):
        rep = upper_bound(f, seq, d)
        lambdas.append(rep.lam)
        if math.isfinite(rep.lam) and rep.lam < cutoff:
            refuted_at = d
            break
    return CopositivityReport(matrix=rows, d_max=d_max, lambdas=lambdas,
                              refuted_at=refuted_at)
