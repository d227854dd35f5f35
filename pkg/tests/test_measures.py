import math
import random
from fractions import Fraction

import pytest

from polybound import (MeasureSpec, MomentSequence, Polynomial, is_psd,
                       mc_moment, moment_matrix)


def all_specs(n):
    out = [MeasureSpec.gaussian(n), MeasureSpec.exponential_orthant(n),
           MeasureSpec.box([0] * n, [1] * n), MeasureSpec.box([-1] * n, [2] * n),
           MeasureSpec.pm1_cube(n), MeasureSpec.simplex(n),
           MeasureSpec.ball(n), MeasureSpec.sphere(n)]
    rng = random.Random(5 + n)
    pts = [tuple(Fraction(rng.randint(-8, 8), 4) for _ in range(n)) for _ in range(3)]
    out.append(MeasureSpec.discrete(pts, [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]))
    return out


def test_exponential_moment():
    seq = MomentSequence(MeasureSpec.exponential_orthant(2))
    assert seq.moment((2, 4)) == math.factorial(2) * math.factorial(4) == 48


def test_gaussian_moment():
    seq = MomentSequence(MeasureSpec.gaussian(1))
    assert seq.moment((4,)) == 3
    assert seq.moment((6,)) == 15
    assert seq.moment((3,)) == 0


def test_box_moment():
    seq = MomentSequence(MeasureSpec.box([0, 0], [1, 1]))
    assert seq.moment((2, 2)) == Fraction(1, 9)


def test_pm1_cube_odd_moment():
    seq = MomentSequence(MeasureSpec.pm1_cube(3))
    assert seq.moment((1, 2, 0)) == 0
    assert seq.moment((2, 2, 4)) == 1


def test_simplex_moment_vs_iterated_integral():
    # oracle: iterated exact integration over {x>=0, y>=0, x+y<=1}:
    # int x y dA = int_0^1 x (1-x)^2/2 dx = 1/24, area = 1/2
    seq = MomentSequence(MeasureSpec.simplex(2))
    assert seq.moment((1, 1)) == Fraction(1, 24) / Fraction(1, 2) == Fraction(1, 12)
    # second oracle point: int x^2 dA = int_0^1 x^2 (1-x) dx = 1/12
    assert seq.moment((2, 0)) == Fraction(1, 12) / Fraction(1, 2) == Fraction(1, 6)


def test_sphere_symmetry_identity():
    # the squared coordinates on the sphere sum to 1, so by symmetry each
    # second moment is 1/n
    for n in (2, 3, 5):
        seq = MomentSequence(MeasureSpec.sphere(n))
        e = (2,) + (0,) * (n - 1)
        assert seq.moment(e) == Fraction(1, n)


def test_ball_second_moment():
    # radial oracle: E r^2 = n/(n+2), split evenly over coordinates
    for n in (1, 2, 3):
        seq = MomentSequence(MeasureSpec.ball(n))
        e = (2,) + (0,) * (n - 1)
        assert seq.moment(e) == Fraction(1, n) * Fraction(n, n + 2)


def test_ball_n1_is_uniform_interval():
    # the 1-d ball is [-1,1] with uniform measure: moments 1/(k+1) for even k
    seq = MomentSequence(MeasureSpec.ball(1))
    for k in (0, 2, 4, 6):
        assert seq.moment((k,)) == Fraction(1, k + 1)


def test_moment_vector_examples():
    assert MomentSequence(MeasureSpec.gaussian(1)).moment_vector(2) == [1, 0, 1]
    assert MomentSequence(MeasureSpec.exponential_orthant(2)).moment_vector(1) == [1, 1, 1]
    assert MomentSequence(MeasureSpec.box([0, 0], [1, 1])).moment_vector(2) == \
        [1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 3)]


def test_box_moment_vs_numeric_quadrature():
    seq = MomentSequence(MeasureSpec.box([-1], [2]))
    import numpy as np
    xs = np.linspace(-1.0, 2.0, 200001)
    for k in range(7):
        numeric = np.trapezoid(xs ** k, xs) / 3.0
        assert float(seq.moment((k,))) == pytest.approx(numeric, abs=1e-8)


def test_mass_one_everywhere():
    for n in (1, 2, 3):
        for spec in all_specs(n):
            assert MomentSequence(spec).moment((0,) * n) == 1


def test_odd_moments_vanish_for_symmetric_kinds():
    for n in (1, 2):
        for spec in all_specs(n):
            if not spec.is_symmetric:
                continue
            seq = MomentSequence(spec)
            e = (1,) + (0,) * (n - 1)
            assert seq.moment(e) == 0
            assert seq.moment((3,) + (0,) * (n - 1)) == 0


def test_moment_matrices_psd_small():
    for n in (1, 2):
        for spec in all_specs(n):
            seq = MomentSequence(spec)
            for d in (1, 2, 3):
                assert is_psd(moment_matrix(seq, d)).psd, (spec.kind, n, d)


def test_discrete_two_path():
    pts = [(Fraction(1, 2), Fraction(-1)), (Fraction(2), Fraction(3, 4))]
    w = [Fraction(1, 3), Fraction(2, 3)]
    seq = MomentSequence(MeasureSpec.discrete(pts, w))
    rng = random.Random(3)
    for _ in range(10):
        a = (rng.randint(0, 4), rng.randint(0, 4))
        direct = sum(wi * p[0] ** a[0] * p[1] ** a[1] for p, wi in zip(pts, w))
        assert seq.moment(a) == direct


def test_mc_cross_check_quick():
    for spec in (MeasureSpec.ball(2), MeasureSpec.sphere(3), MeasureSpec.simplex(2)):
        seq = MomentSequence(spec)
        for alpha in [(2,) + (0,) * (spec.n - 1), (2, 2) + (0,) * (spec.n - 2)]:
            est, se = mc_moment(spec, alpha, samples=200000, seed=42)
            assert abs(est - float(seq.moment(alpha))) <= 4 * se + 1e-12


def test_integrate():
    seq = MomentSequence(MeasureSpec.exponential_orthant(2))
    f = Polynomial(2, {(4, 2): 1, (2, 4): 1, (2, 2): -1})
    assert seq.integrate(f) == 92


def test_mean():
    assert MomentSequence(MeasureSpec.gaussian(2)).mean() == (0, 0)
    assert MomentSequence(MeasureSpec.exponential_orthant(2)).mean() == (1, 1)
    assert MomentSequence(MeasureSpec.box([0], [1])).mean() == (Fraction(1, 2),)


def test_spec_validation():
    with pytest.raises(ValueError):
        MeasureSpec.box([0, 0], [1, 0])
    with pytest.raises(ValueError):
        MeasureSpec.discrete([(1, 2)], [Fraction(1, 2)])
    with pytest.raises(ValueError):
        MeasureSpec("banana", 2)


def test_spec_descriptors():
    assert MeasureSpec.pm1_cube(3).is_discrete
    assert not MeasureSpec.pm1_cube(3).is_convex
    assert MeasureSpec.ball(2).is_convex and MeasureSpec.ball(2).is_compact
    assert not MeasureSpec.sphere(2).is_convex
    assert not MeasureSpec.gaussian(2).is_compact
    assert MeasureSpec.box([-1, -2], [1, 2]).is_symmetric
    assert not MeasureSpec.box([0, 0], [1, 1]).is_symmetric


def test_contains():
    assert MeasureSpec.simplex(2).contains((0.2, 0.3))
    assert not MeasureSpec.simplex(2).contains((0.8, 0.4))
    assert MeasureSpec.sphere(2).contains((0.6, 0.8))
    assert not MeasureSpec.sphere(2).contains((0.5, 0.5))
    assert MeasureSpec.pm1_cube(2).contains((1.0, -1.0))


def test_spec_json_roundtrip():
    for n in (1, 2, 3):
        for spec in all_specs(n):
            assert MeasureSpec.from_json(spec.to_json()) == spec
