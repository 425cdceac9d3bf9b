import pytest

from nilpotent_as.asops import op_R, op_R_lie, op_S, op_S_lie, split_check, split_check_lie
from nilpotent_as.base import get_field
from nilpotent_as.checks import random_series
from nilpotent_as.liealg import LieSeries, Universe, gen_D
from nilpotent_as.series import Series, WindowError

W = (60, 0)


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2)])
def test_splitting_identity_and_idempotence(rng, p, n):
    F = get_field(p, n)
    for _ in range(50):
        b = random_series(rng, F, 2, W)
        S, R = split_check(b)
        assert op_S(S) == S


def test_S_examples():
    F = get_field(5)
    x = Series(F, 2, {(-10, 5): 3, (2, 1): 1, (0, 0): 2}, W)
    assert op_S(x) == Series(F, 2, {(-2, 1): 3, (0, 0): 2}, W)


def test_R_needs_escaping_orbit():
    F = get_field(5)
    with pytest.raises(WindowError):
        op_R(Series(F, 2, {(0, 7): 1}, W))


def test_SR_counterexample():
    # R(t^(-5, 0)) = t^(-1, 0), which S keeps: SR is not zero on such terms
    F = get_field(5)
    x = Series(F, 2, {(-5, 0): 1}, W)
    assert op_R(x) == Series(F, 2, {(-1, 0): 1}, W)
    assert op_S(op_R(x))


def test_lie_splitting(rng):
    F = get_field(5)
    U = Universe(F, 2, 2, (5, 0), weight_cut=3, series_window="weighted", flat_bound=100)
    g1, g2 = gen_D((1, 0)), gen_D((2, 1))
    x = LieSeries.term(U, (-10, 5), g1, 2) + LieSeries.term(U, (3, 1), g2) + LieSeries.term(U, (0, 0), g1, 4)
    x = x + LieSeries.term(U, (-1, 0), g1).bracket(LieSeries.term(U, (-4, 0), g2))
    S, R = split_check_lie(x)
    assert op_S_lie(S) == S
    assert op_R_lie(x) == R
