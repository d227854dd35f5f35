import random
from fractions import Fraction

import pytest

from polybound import (MeasureSpec, MomentSequence, Polynomial, SymMatrix,
                       enumerate_basis, ldlt, localizing_matrix, moment_matrix,
                       quadratic_form)


def gauss1():
    return MomentSequence(MeasureSpec.gaussian(1))


def rand_poly(rng, n, d, density=0.4):
    terms = {}
    for e in enumerate_basis(n, d):
        if rng.random() < density:
            terms[e] = Fraction(rng.randint(-30, 30), rng.randint(1, 6))
    return Polynomial(n, terms)


def as_dense(m):
    return [[m.get(i, j) for j in range(m.size)] for i in range(m.size)]


def test_moment_matrix_gaussian_d1():
    m = moment_matrix(gauss1(), 1)
    assert as_dense(m) == [[1, 0], [0, 1]]


def test_moment_matrix_gaussian_d2():
    m = moment_matrix(gauss1(), 2)
    assert as_dense(m) == [[1, 0, 1], [0, 1, 0], [1, 0, 3]]


def test_moment_matrix_single_point():
    seq = MomentSequence(MeasureSpec.discrete([(2,)], [1]))
    m = moment_matrix(seq, 1)
    assert as_dense(m) == [[1, 2], [2, 4]]


def test_localizing_with_one_is_moment_matrix():
    for spec in (MeasureSpec.gaussian(2), MeasureSpec.box([0, 0], [1, 1])):
        seq = MomentSequence(spec)
        one = Polynomial.constant(2, 1)
        for d in (0, 1, 2):
            assert localizing_matrix(seq, one, d) == moment_matrix(seq, d)


def test_localizing_x_squared():
    f = Polynomial(1, {(2,): 1})
    m = localizing_matrix(gauss1(), f, 1)
    assert as_dense(m) == [[1, 0], [0, 3]]


def test_localizing_shifted_square():
    f = Polynomial(1, {(2,): 1, (1,): -2, (0,): 1})  # (x-1)^2
    m = localizing_matrix(gauss1(), f, 1)
    assert as_dense(m) == [[2, -2], [-2, 4]]


def test_quadratic_form_examples():
    m = moment_matrix(gauss1(), 1)
    assert quadratic_form(m, [1, 1]) == 2
    assert quadratic_form(m, [0, 0]) == 0
    loc = localizing_matrix(gauss1(), Polynomial.variable(0, 1), 1)
    assert quadratic_form(loc, [1, -1]) == -2


def test_localizing_linearity():
    rng = random.Random(17)
    seq = MomentSequence(MeasureSpec.exponential_orthant(2))
    for _ in range(5):
        f = rand_poly(rng, 2, 3)
        g = rand_poly(rng, 2, 3)
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        lhs = localizing_matrix(seq, a * f + b * g, 2)
        mf = localizing_matrix(seq, f, 2)
        mg = localizing_matrix(seq, g, 2)
        for i in range(lhs.size):
            for j in range(i + 1):
                assert lhs.get(i, j) == a * mf.get(i, j) + b * mg.get(i, j)


def test_localizing_shift_identity():
    rng = random.Random(23)
    for spec in (MeasureSpec.gaussian(2), MeasureSpec.box([0, 0], [1, 1])):
        seq = MomentSequence(spec)
        f = rand_poly(rng, 2, 4, density=0.5)
        lam = Fraction(rng.randint(-10, 10), 3)
        shifted = localizing_matrix(seq, f.shift(lam), 2)
        base = localizing_matrix(seq, f, 2)
        mom = moment_matrix(seq, 2)
        for i in range(shifted.size):
            for j in range(i + 1):
                assert shifted.get(i, j) == base.get(i, j) - lam * mom.get(i, j)


def test_hankel_property():
    seq = MomentSequence(MeasureSpec.exponential_orthant(2))
    f = Polynomial(2, {(1, 0): 2, (0, 2): -1})
    m = localizing_matrix(seq, f, 3)
    basis = m.basis
    seen = {}
    for i in range(m.size):
        for j in range(i + 1):
            s = tuple(a + b for a, b in zip(basis[i], basis[j]))
            if s in seen:
                assert m.get(i, j) == seen[s]
            else:
                seen[s] = m.get(i, j)


def test_quadratic_form_matches_direct_integration():
    rng = random.Random(31)
    seq = MomentSequence(MeasureSpec.box([-1, 0], [1, 2]))
    basis = enumerate_basis(2, 2)
    for _ in range(5):
        f = rand_poly(rng, 2, 3)
        gvec = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(basis.size)]
        g = Polynomial(2, {e: c for e, c in zip(basis.exponents, gvec) if c != 0})
        m = localizing_matrix(seq, f, 2)
        assert quadratic_form(m, gvec) == seq.integrate(g * g * f)


def test_discrete_rank_bound():
    rng = random.Random(41)
    pts = [tuple(Fraction(rng.randint(-4, 4), 2) for _ in range(2)) for _ in range(3)]
    seq = MomentSequence(MeasureSpec.discrete(pts))
    for d in (1, 2, 3):
        fac = ldlt(moment_matrix(seq, d))
        assert fac.rank <= 3


def test_dump_and_parse_triplets():
    m = moment_matrix(gauss1(), 2)
    text = m.dump_triplets()
    back = SymMatrix.from_triplets(text)
    assert back == m
    assert "2 0 1" in text.splitlines()


def test_from_dense_symmetry_check():
    with pytest.raises(ValueError):
        SymMatrix.from_dense([[1, 2], [3, 4]])


def test_quadratic_form_length_mismatch():
    m = moment_matrix(gauss1(), 1)
    with pytest.raises(ValueError):
        quadratic_form(m, [1, 2, 3])
