import pytest

from nilpotent_as.asops import op_S_lie
from nilpotent_as.base import madd, mscale
from nilpotent_as.checks import f9_setup, simplest_setup
from nilpotent_as.liealg import D0, LieElt, LieSeries, gen_D
from nilpotent_as.series import Omega
from nilpotent_as.solver import (GeneratorWindow, Setup, bracket_lij, build_e, check_lift_congruences, enveloping_check,
                                 linear_lift_term, recurrence_residual, rehome, solve_c1, solve_lift_pair)


@pytest.fixture(scope="module")
def simplest():
    return simplest_setup(5, 2)


@pytest.fixture(scope="module")
def sols(simplest):
    return solve_c1(simplest, 1), solve_c1(simplest, 2)


def test_build_e(simplest):
    e = build_e(simplest)
    assert op_S_lie(e) == e
    assert len(e.terms) == len(simplest.window.indices) + 1
    F = simplest.field
    empty = Setup(simplest.omega, 2, GeneratorWindow(5, (5, 0), 0, 1))
    assert build_e(empty) == LieSeries.term(empty.universe, (0, 0), D0, F.alpha0)


def test_recurrence_residual_vanishes(simplest, sols):
    for sol in sols:
        assert not recurrence_residual(simplest, sol.m, sol.c1, sol.V)


def test_depth_one_c1(simplest, sols):
    """c1 at depth 1: sum over n of sigma^n(X_iota) t^(p^n (cbar0 + p iota - a)) a^(m) D(a, n) on positive exponents."""
    U = simplest.universe
    F = simplest.field
    z = (0, 0)
    for sol in sols:
        expected = LieSeries(U)
        for a in simplest.window.indices:
            for e0, X in simplest.omega_p.terms.items():
                base = madd(e0, mscale(-1, a))
                if base <= z:
                    continue
                for n in range(8):
                    expected = expected + LieSeries.term(U, mscale(F.p ** n, base), gen_D(a, n % F.N0),
                                                         F.mul(F.frob(X, n), F.from_int(a[sol.m - 1])))
        assert sol.c1.filter(lambda e, w: len(w) == 1 and e > z) == expected


def test_V_shapes(simplest, sols):
    F = simplest.field
    for sol in sols:
        assert all(len(w) >= 2 for _, w in sol.V_at("0").terms)
        for a in simplest.window.core:
            b = madd(simplest.cbar0, a)
            if simplest.window.in_core(b):
                lin = sol.V_at(a).filter(lambda e, w: len(w) == 1)
                assert lin == LieElt.gen(lin.universe, gen_D(b), F.neg(F.from_int(a[sol.m - 1])))


def test_enveloping_oracle(sols):
    for sol in sols:
        assert not enveloping_check(sol)


def test_flat_bound_independence(simplest, sols):
    wider = Setup(simplest.omega, 2, simplest.window, simplest.flat_bound * 2)
    for sol in sols:
        other = solve_c1(wider, sol.m)
        for a in simplest.window.core:
            assert rehome(other.V_at(a), simplest.core_universe) == rehome(sol.V_at(a), simplest.core_universe)


def test_V_depends_on_low_A_only(simplest, sols):
    F = simplest.field
    om = Omega(F, (1, 0), {(0, 0): 1, (1, 0): 3, (1, 2): 1, (2, -1): 4}, kind="A")
    other = simplest.with_omega(om)
    for sol in sols:
        o = solve_c1(other, sol.m)
        for a in list(simplest.window.core) + ["0"]:
            assert rehome(o.V_at(a), simplest.core_universe) == rehome(sol.V_at(a), simplest.core_universe)


def test_bracket_lij_class2(sols):
    v, nonconst = bracket_lij(*sols)
    w, _ = bracket_lij(sols[1], sols[0])
    assert not v and not w
    assert not nonconst


def test_lift_pairs():
    setup = simplest_setup(5, 2)
    l1, l2 = solve_lift_pair(setup, 1), solve_lift_pair(setup, 2)
    assert check_lift_congruences(l1, l2) == {"D0": True, "Da": True, "commutator": True}
    assert check_lift_congruences(l2) == {"D0": True, "Da": True}
    # depth-1 part of an image is the generator plus the linear term
    U = setup.core_universe
    for a in setup.window.of_weight(1)[:5]:
        img = rehome(l1.image(gen_D(a)), U).filter(lambda e, w: len(w) == 1)
        assert img == LieElt.gen(U, gen_D(a)) + linear_lift_term(setup, 1, a)


def test_f9_instance():
    s = f9_setup(1)
    for m in (1, 2):
        sol = solve_c1(s, m)
        assert not recurrence_residual(s, m, sol.c1, sol.V)
        assert not enveloping_check(sol)
