import pytest

from nilpotent_as.base import get_field
from nilpotent_as.checks import random_lie_elements, suite_ch_axioms, suite_enveloping
from nilpotent_as.chgroup import (adjoint, assoc_to_lie, ch_compose, ch_inverse, ch_power, group_commutator,
                                  lie_to_assoc, trunc_exp, trunc_log)
from nilpotent_as.liealg import LieElt, Universe, UniverseError, gen_D

F5 = get_field(5)


def universe(cls):
    return Universe(F5, 2, cls, (5, 0))


def pool():
    return [gen_D(a) for a in ((1, 0), (1, 2), (2, -1), (4, 3))]


def test_class2_formula(rng):
    U = universe(2)
    half = F5.inv(2)
    for x, y in zip(*[iter(random_lie_elements(rng, U, pool(), 40))] * 2):
        assert ch_compose(x, y) == x + y + x.bracket(y).scale(half)
        assert adjoint(y, x) == x + x.bracket(y)
        assert group_commutator(x, y) == x.bracket(y)


def test_identity_inverse_cancellation(rng):
    U = universe(3)
    zero = LieElt(U)
    for x, y in zip(*[iter(random_lie_elements(rng, U, pool(), 20))] * 2):
        assert ch_compose(x, zero) == x
        assert not ch_compose(x, ch_inverse(x))
        assert ch_compose(ch_inverse(x), ch_compose(x, y)) == y
        assert adjoint(zero, x) == x
        assert adjoint(y, adjoint(-y, x)) == x
    assert ch_inverse(LieElt.gen(U, gen_D((1, 0)))) == LieElt.gen(U, gen_D((1, 0)), F5.neg(1))
    assert not ch_inverse(zero)


def test_exp_log_roundtrip(rng):
    U = universe(4)
    for x in random_lie_elements(rng, U, pool(), 10):
        assert trunc_log(trunc_exp(x)) == x
        assert assoc_to_lie(lie_to_assoc(x)) == x


def test_period_p(rng):
    U = universe(4)
    for x in random_lie_elements(rng, U, pool(), 5):
        assert not ch_power(x, 5)


def test_class_must_be_below_p():
    with pytest.raises(UniverseError):
        Universe(F5, 2, 5, (5, 0))


def test_axiom_suite_small():
    assert all(c.passed for c in suite_ch_axioms(seed=3, count=20))


def test_enveloping_suite_small():
    assert all(c.passed for c in suite_enveloping(seed=3, count=10))
