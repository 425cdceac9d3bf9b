import pytest

from nilpotent_as.base import get_field
from nilpotent_as.chgroup import lie_to_assoc
from nilpotent_as.liealg import (D0, LieElt, LieSeries, Universe, UniverseError, bracket, gen_D, gen_L, is_lyndon,
                                 reduce_mod_depth, reduce_mod_weight, sigma_act, weight_of)
from nilpotent_as.checks import random_lie_elements

F5 = get_field(5)
F9 = get_field(3, 2)
C0 = (5, 0)


def U5(cls=3, **kw):
    return Universe(F5, 2, cls, C0, **kw)


def gens(n=4):
    return [gen_D(a) for a in ((1, 0), (1, 2), (2, -1), (4, 3), (7, -4))][:n]


def test_weights():
    assert weight_of(gen_D((1, 2)), C0) == 1
    assert weight_of(gen_D((7, -4)), C0) == 2
    assert weight_of(gen_D((5, 0)), C0) == 2
    assert weight_of(D0, C0) == 1
    with pytest.raises(ValueError):
        weight_of(gen_D((0, -1)), C0)


def test_generator_order():
    assert sorted([gen_L(1), gen_D((1, 0), 1), D0, gen_D((1, 0))]) == [D0, gen_D((1, 0)), gen_D((1, 0), 1), gen_L(1)]


def test_bracket_identities(rng):
    U = U5()
    for _ in range(50):
        x, y, z = random_lie_elements(rng, U, gens(), 3)
        assert not bracket(x, x)
        assert not (bracket(x, y) + bracket(y, x))
        assert not (x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y)))
        assert bracket(x + z, y) == bracket(x, y) + bracket(z, y)


def test_class_bound_and_universe():
    U = U5(cls=2)
    a, b, c = (LieElt.gen(U, g) for g in gens(3))
    assert not a.bracket(b).bracket(c)
    with pytest.raises(UniverseError):
        Universe(F5, 2, 5, C0)
    with pytest.raises(UniverseError):
        a + LieElt.gen(U5(), gens(1)[0])


def test_lyndon_normal_form_matches_free_associative_oracle(rng):
    U = U5()
    g = gens(4)
    for _ in range(60):
        x = random_lie_elements(rng, U, g, 1)[0]
        assert all(is_lyndon(w) for _, w in x.terms)
        # two different bracketings of the same element expand identically
        u, v, w = random_lie_elements(rng, U, g, 3)
        left = u.bracket(v.bracket(w))
        right = u.bracket(v).bracket(w) + v.bracket(u.bracket(w))
        assert left == right
        assert lie_to_assoc(left) == lie_to_assoc(right)


def test_weight_filtration(rng):
    U = U5(cls=3)
    pool = gens(5)
    for _ in range(30):
        x, y = random_lie_elements(rng, U, pool, 2)
        s1 = x.weight() or 1
        s2 = y.weight() or 1
        z = bracket(x, y)
        assert not z or z.weight() >= s1 + s2


def test_reductions():
    U = U5()
    a = LieElt.gen(U, gen_D((7, -4)))
    b = LieElt.gen(U, gen_D((1, 0)))
    assert not reduce_mod_weight(a, 2)
    assert reduce_mod_weight(a, 3) == a
    assert not reduce_mod_weight(a.bracket(b), 3)
    assert reduce_mod_depth(a.bracket(b), 3) == a.bracket(b)


def test_sigma():
    U = Universe(F9, 2, 2, (3, 0))
    g = F9.gen().value
    x = LieElt.gen(U, gen_D((1, 0)))
    assert sigma_act(sigma_act(x, 1), 1) == x
    assert sigma_act(x, 1) == LieElt.gen(U, gen_D((1, 0), 1))
    s = LieSeries.term(U, (-1, 0), gen_D((1, 0)))
    assert sigma_act(s, 1) == LieSeries.term(U, (-3, 0), gen_D((1, 0), 1))
    orbit = LieElt(U, {((), (gen_D((1, 0), 0),)): g, ((), (gen_D((1, 0), 1),)): F9.frob(g, 1)})
    assert sigma_act(orbit, 1) == orbit
    y = LieElt.gen(U, gen_D((2, 1)), g)
    assert sigma_act(x.bracket(y), 1) == sigma_act(x, 1).bracket(sigma_act(y, 1))
    with pytest.raises(ValueError):
        sigma_act(LieSeries.term(U, (-1, 0), gen_D((1, 0))), -1)
