import math
from fractions import Fraction

import pytest

from polybound import MeasureSpec, MomentSequence, Polynomial, grid_minimize, mc_moment
from polybound.problems import motzkin_like, two_well_quartic


def test_grid_two_well():
    gmin, arg = grid_minimize(two_well_quartic(), [(0, 1)], 10 ** 4)
    assert gmin == pytest.approx(-0.0156, abs=1e-4)


def test_grid_motzkin():
    gmin, _ = grid_minimize(motzkin_like(), [(0, 3), (0, 3)], 2000)
    assert gmin == pytest.approx(-1 / 27, abs=1e-3)


def test_grid_constant():
    f = Polynomial.constant(2, Fraction(-7, 4))
    gmin, _ = grid_minimize(f, [(0, 1), (0, 1)], 10)
    assert gmin == -1.75


def test_grid_is_upper_bound():
    # grid points are feasible, so the result cannot undershoot the true min
    f = Polynomial(1, {(2,): 1})  # min 0 at x=0
    gmin, _ = grid_minimize(f, [(-1, 1), ], 100)
    assert gmin >= 0


def test_grid_validation():
    with pytest.raises(ValueError):
        grid_minimize(two_well_quartic(), [(0, 1)], 1)
    with pytest.raises(ValueError):
        grid_minimize(two_well_quartic(), [(0, 1), (0, 1)], 10)


def test_mc_total_mass():
    est, se = mc_moment(MeasureSpec.ball(2), (0, 0), samples=10 ** 4, seed=1)
    assert est == 1.0 and se == 0.0


def test_mc_sphere_second_moment():
    spec = MeasureSpec.sphere(3)
    est, se = mc_moment(spec, (2, 0, 0), samples=10 ** 5, seed=7)
    assert abs(est - 1 / 3) <= 4 * se


def test_mc_simplex_cross_moment():
    spec = MeasureSpec.simplex(2)
    est, se = mc_moment(spec, (1, 1), samples=10 ** 5, seed=11)
    assert abs(est - 1 / 12) <= 4 * se


def test_mc_error_scaling():
    spec = MeasureSpec.ball(2)
    _, se1 = mc_moment(spec, (2, 2), samples=10 ** 4, seed=3)
    _, se2 = mc_moment(spec, (2, 2), samples=4 * 10 ** 4, seed=3)
    assert se2 == pytest.approx(se1 / 2, rel=0.15)


def test_mc_unsupported_kind():
    with pytest.raises(ValueError):
        mc_moment(MeasureSpec.gaussian(2), (2, 0), samples=10 ** 4)
    with pytest.raises(ValueError):
        mc_moment(MeasureSpec.ball(2), (2, 0), samples=100)


def test_mc_matches_exact_ball():
    spec = MeasureSpec.ball(3)
    seq = MomentSequence(spec)
    for alpha in [(2, 0, 0), (2, 2, 0), (4, 0, 2)]:
        est, se = mc_moment(spec, alpha, samples=2 * 10 ** 5, seed=17)
        assert abs(est - float(seq.moment(alpha))) <= 4 * se
