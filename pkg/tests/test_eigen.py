import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from polybound import (MeasureSpec, MomentSequence, NotPositiveSemidefiniteError,
                       Polynomial, SymMatrix, gen_eig_smallest, is_psd, ldlt,
                       localizing_matrix, moment_matrix, quadratic_form,
                       sym_eig_smallest)
from polybound.eigen import _jacobi, gen_eig_all


def sym(entries):
    return SymMatrix.from_dense(entries)


def rand_sym(rng, n, den=4):
    d = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            v = Fraction(rng.randint(-20, 20), den)
            d[i][j] = d[j][i] = v
    return sym(d)


# ---- exact factorization ----

def test_ldlt_2x2():
    fac = ldlt(sym([[4, 2], [2, 2]]))
    assert fac.pivots == [4, 1]
    assert fac.order == [0, 1]
    assert fac.lcols[0] == [(1, Fraction(1, 2))]
    assert fac.complete and not fac.indefinite and fac.rank == 2


def test_ldlt_rank_one():
    fac = ldlt(sym([[1, 2], [2, 4]]))
    assert fac.rank == 1
    assert fac.diag == [1, 0]


def test_ldlt_hyperbolic_is_indefinite():
    fac = ldlt(sym([[0, 1], [1, 0]]))
    assert fac.indefinite and not fac.complete
    v = fac.negative_direction()
    assert quadratic_form(sym([[0, 1], [1, 0]]), v) < 0


def test_ldlt_negative_pivot():
    fac = ldlt(sym([[1, 2], [2, 1]]))
    assert fac.indefinite and fac.complete
    assert any(p < 0 for p in fac.pivots)


def test_ldlt_zero_head_pivots_by_swap():
    fac = ldlt(sym([[0, 1], [1, 2]]))
    assert fac.complete and fac.order[0] == 1


def test_ldlt_reconstruction_random():
    rng = random.Random(2024)
    for _ in range(20):
        n = rng.randint(1, 12)
        a = rand_sym(rng, n)
        fac = ldlt(a)
        if not fac.complete:
            continue
        assert fac.reconstruct() == a
        # zero pivots only in trailing positions: all listed pivots nonzero
        assert all(p != 0 for p in fac.pivots)


def test_ldlt_psd_gram_matrices():
    rng = random.Random(77)
    for _ in range(10):
        n = rng.randint(2, 6)
        m = rng.randint(1, n)
        cols = [[Fraction(rng.randint(-5, 5), 2) for _ in range(m)] for _ in range(n)]
        dense = [[sum(cols[i][k] * cols[j][k] for k in range(m)) for j in range(n)]
                 for i in range(n)]
        fac = ldlt(sym(dense))
        assert fac.complete and not fac.indefinite
        assert fac.rank <= m


# ---- PSD testing ----

def test_is_psd_examples():
    assert is_psd(sym([[1, 0], [0, 3]])).psd
    v = is_psd(sym([[0, 1], [1, 0]]))
    assert not v.psd
    assert v.witness[0] == -v.witness[1] != 0
    assert v.witness_value < 0
    seq = MomentSequence(MeasureSpec.gaussian(1))
    assert is_psd(moment_matrix(seq, 3)).psd


def test_is_psd_witness_is_exact():
    a = sym([[1, 2], [2, 1]])
    v = is_psd(a)
    assert quadratic_form(a, v.witness) == v.witness_value < 0


def test_is_psd_margin_semantics():
    tiny = sym([[1, 0], [0, Fraction(-1, 10 ** 12)]])
    assert is_psd(tiny, tol=Fraction(1, 10 ** 8)).psd
    assert not is_psd(tiny, tol=0).psd


# ---- symmetric eigensolver ----

def test_sym_eig_diag():
    r = sym_eig_smallest(np.diag([3.0, 1.0, 5.0]))
    assert r.value == pytest.approx(1.0, abs=1e-12)
    assert abs(r.vector[1]) == pytest.approx(1.0, abs=1e-10)


def test_sym_eig_2x2():
    # oracle: characteristic polynomial x^2 - 6x + 4 has roots 3 +- sqrt(5)
    r = sym_eig_smallest(np.array([[2.0, -2.0], [-2.0, 4.0]]))
    assert r.value == pytest.approx(3 - math.sqrt(5), abs=1e-12)


def test_sym_eig_1x1():
    r = sym_eig_smallest(np.array([[4.5]]))
    assert r.value == 4.5 and r.vector[0] == 1.0


def test_sym_eig_residual_bound():
    rng = np.random.default_rng(12)
    a = rng.standard_normal((8, 8))
    a = a + a.T
    r = sym_eig_smallest(a)
    assert r.residual <= 1e-10 * np.linalg.norm(a, "fro")


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(99)
    for n in (2, 5, 9):
        a = rng.standard_normal((n, n))
        a = a + a.T
        w, v = _jacobi(a)
        assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-11 * np.linalg.norm(a))
        assert np.allclose(a @ v, v @ np.diag(w), atol=1e-10 * np.linalg.norm(a))


# ---- generalized eigenproblem ----

def test_gen_eig_decoupled():
    r = gen_eig_smallest(sym([[2, 0], [0, 6]]), sym([[1, 0], [0, 2]]))
    assert r.value == pytest.approx(2.0, abs=1e-12)


def test_gen_eig_quartic_pencil():
    # oracle: even/odd decoupling gives 2*l^2 - 12*l + 6 = 0, smallest root 3 - sqrt(6)
    seq = MomentSequence(MeasureSpec.gaussian(1))
    a = localizing_matrix(seq, Polynomial(1, {(2,): 1}), 2)
    b = moment_matrix(seq, 2)
    r = gen_eig_smallest(a, b)
    assert r.value == pytest.approx(3 - math.sqrt(6), abs=1e-10)


def test_gen_eig_rank_deficient_discrete():
    pts = [(Fraction(-1),), (Fraction(2),)]
    seq = MomentSequence(MeasureSpec.discrete(pts))
    f = Polynomial(1, {(2,): 1, (1,): -1})  # x^2 - x
    a = localizing_matrix(seq, f, 2)
    b = moment_matrix(seq, 2)
    w, _, red = gen_eig_all(a, b)
    assert red.rank == 2
    direct = min(float(f.evaluate(p)) for p in pts)
    assert w[0] == pytest.approx(direct, abs=1e-9)


def test_gen_eig_congruence_invariance():
    rng = random.Random(4)
    seq = MomentSequence(MeasureSpec.box([0, 0], [1, 1]))
    f = Polynomial(2, {(2, 0): 1, (1, 1): -3, (0, 0): 1})
    a = localizing_matrix(seq, f, 2)
    b = moment_matrix(seq, 2)
    base = gen_eig_smallest(a, b).value
    for _ in range(3):
        scale = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(a.size)]
        sa = SymMatrix([[a.rows[i][j] * scale[i] * scale[j] for j in range(i + 1)]
                        for i in range(a.size)])
        sb = SymMatrix([[b.rows[i][j] * scale[i] * scale[j] for j in range(i + 1)]
                        for i in range(b.size)])
        assert gen_eig_smallest(sa, sb).value == pytest.approx(base, rel=1e-10)


def test_gen_eig_identity_reduces_to_sym():
    rng = random.Random(8)
    a = rand_sym(rng, 6)
    eye = sym([[1 if i == j else 0 for j in range(6)] for i in range(6)])
    r1 = gen_eig_smallest(a, eye)
    r2 = sym_eig_smallest(a)
    assert r1.value == pytest.approx(r2.value, abs=1e-10)


def test_gen_eig_matches_scipy_oracle():
    rng = np.random.default_rng(31415)
    for _ in range(8):
        m = rng.standard_normal((5, 5))
        a_np = m + m.T
        r = rng.standard_normal((5, 5))
        b_np = r @ r.T + np.eye(5)
        a = SymMatrix.from_dense([[Fraction(float(a_np[i, j])) for j in range(5)]
                                  for i in range(5)], check_symmetry=False)
        b = SymMatrix.from_dense([[Fraction(float(b_np[i, j])) for j in range(5)]
                                  for i in range(5)], check_symmetry=False)
        ours = gen_eig_smallest(a, b).value
        oracle = scipy.linalg.eigh(a_np, b_np, eigvals_only=True)[0]
        assert ours == pytest.approx(oracle, rel=1e-9, abs=1e-11)


def test_gen_eig_eigvector_satisfies_pencil():
    seq = MomentSequence(MeasureSpec.exponential_orthant(2))
    f = Polynomial(2, {(2, 0): 1, (0, 2): 1, (1, 1): -1})
    a = localizing_matrix(seq, f, 2)
    b = moment_matrix(seq, 2)
    r = gen_eig_smallest(a, b)
    an, bn = a.to_numpy(), b.to_numpy()
    lhs = an @ r.vector
    rhs = r.value * (bn @ r.vector)
    assert np.allclose(lhs, rhs, atol=1e-8 * np.linalg.norm(an))


def test_gen_eig_b_indefinite_raises():
    with pytest.raises(NotPositiveSemidefiniteError):
        gen_eig_smallest(sym([[1, 0], [0, 1]]), sym([[1, 0], [0, -1]]))
    with pytest.raises(NotPositiveSemidefiniteError):
        gen_eig_smallest(sym([[1, 0], [0, 1]]), sym([[0, 1], [1, 0]]))


def test_gen_eig_b_zero_raises():
    with pytest.raises(ValueError):
        gen_eig_smallest(sym([[1, 0], [0, 1]]), sym([[0, 0], [0, 0]]))
