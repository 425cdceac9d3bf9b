import json

import pytest

from nilpotent_as.base import get_field
from nilpotent_as.checks import closed_form_mismatches, f9_setup, relation_differences, simplest_setup
from nilpotent_as.liealg import D0, LieElt, gen_D, gen_L, sigma_act
from nilpotent_as.presentation import (PresentationError, Presentation, char0_presentation, char0_setup, choose_m,
                                       closed_form_V0, closed_form_Va, relation_Ra_unreduced, eliminate_generators, emit,
                                       parse_json, presentation_universe,
                                       reference_simplest_relations, relations_mod_C3, word_to_lie)
from nilpotent_as.series import Omega
from nilpotent_as.solver import GeneratorWindow, Setup


@pytest.fixture(scope="module")
def small():
    return simplest_setup(5, 1)


def test_V0_simplest(small):
    U = presentation_universe(small)
    F = small.field
    half = F.inv(2)
    expected = LieElt(U)
    for alpha in (1, 2):
        for g in (-1, 0, 1):
            x = LieElt.gen(U, gen_D((alpha, g))).bracket(LieElt.gen(U, gen_D((5 - alpha, -g))))
            expected = expected + x.scale(F.from_int(alpha))
    # -1/2 sum over ordered pairs = -(sum over alpha <= 2 of alpha [.,.])
    assert closed_form_V0(small, 1, U) == -expected
    assert F.mul(half, 2) == 1


def test_Va_linear_only():
    s = Setup(Omega(get_field(5), (1, 0), {(0, 0): 2}, kind="A"), 2, GeneratorWindow(5, (5, 0), 2, 0))
    U = presentation_universe(s)
    # box 0: only indices (a1, 0); a = (1, 0) has no bracket partners summing to (6, 0) besides (1,0)+(5,0)
    v = closed_form_Va(s, 1, (4, 0), U)
    lin = v.filter(lambda e, w: len(w) == 1)
    assert lin == LieElt.gen(U, gen_D((9, 0)), get_field(5).neg(8 % 5))


@pytest.mark.parametrize("make", [lambda: simplest_setup(5, 2), lambda: f9_setup(1),
                                  lambda: Setup(Omega(get_field(7), (1, 1), {(0, 0): 3, (0, 2): 1}, kind="A"), 2,
                                                GeneratorWindow(7, (7, 7), 2, 1))])
def test_closed_forms_match_solver(make):
    assert closed_form_mismatches(make()) == []


def test_relations_simplest(small):
    pres = relations_mod_C3(small)
    labels = [r.label for r in pres.relations]
    assert labels[:3] == ["R(1,2)", "R0(1)", "R0(2)"]
    assert all(l.startswith("Ra(") for l in labels[3:])
    assert not relation_differences(pres.relations, reference_simplest_relations(small))
    gens = set(pres.generators)
    for r in pres.relations:
        assert {g for _, w in r.body.terms for g in w} <= gens
    assert pres.generators[-3:] == [D0, gen_L(1), gen_L(2)]


def test_R0_literal(small):
    pres = relations_mod_C3(small)
    U = pres.universe
    body = LieElt.gen(U, D0).bracket(LieElt.gen(U, gen_L(1)))
    for alpha in (1, 2):
        for g in (-1, 0, 1):
            body = body + LieElt.gen(U, gen_D((alpha, g))).bracket(LieElt.gen(U, gen_D((5 - alpha, -g)))).scale(alpha)
    assert pres.relation("R0(1)").body == body


def test_antisymmetry_and_unreduced_form(small):
    U = presentation_universe(small)
    pres = relations_mod_C3(small)
    for r in pres.relations:
        if r.kind != "Ra":
            continue
        a = r.args[0]
        full = relation_Ra_unreduced(small, a, 1, 2, U)
        assert relation_Ra_unreduced(small, a, 2, 1, U) == -full
        # the emitted body is the unreduced body with eliminated generators substituted
        assert not full.filter(lambda e, w: len(w) == 1)


def test_eliminate_is_fixpoint(small):
    pres = relations_mod_C3(small)
    assert eliminate_generators(pres, small) == pres


def test_choose_m():
    assert choose_m((0, 3), 5) == 2
    assert choose_m((2, 5), 5) == 1
    with pytest.raises(PresentationError):
        choose_m((5, 10), 5)


def test_demushkin():
    s = Setup(Omega(get_field(5), (1,), {(0,): 1}, kind="A"), 2)
    pres = relations_mod_C3(s)
    assert [r.label for r in pres.relations] == ["R0(1)"]


def test_scaled_A():
    F = get_field(5)
    base = relations_mod_C3(Setup(Omega(F, (1, 0), {(0, 0): 1}, kind="A"), 2, GeneratorWindow(5, (5, 0), 2, 1)))
    scaled = relations_mod_C3(Setup(Omega(F, (1, 0), {(0, 0): 2}, kind="A"), 2, GeneratorWindow(5, (5, 0), 2, 1)))
    for r, q in zip(base.relations, scaled.relations):
        assert q.body.filter(lambda e, w: gen_L(1) not in w and gen_L(2) not in w) == \
            r.body.filter(lambda e, w: gen_L(1) not in w and gen_L(2) not in w).scale(2)


def test_sigma_invariance():
    s = f9_setup(1)
    pres = relations_mod_C3(s)
    table = {(r.kind, r.args, r.twist): r.body for r in pres.relations}
    for (kind, args, n), body in table.items():
        target = table.get((kind, args, (n + 1) % 2), table.get((kind, args, 0)))
        assert sigma_act(body, 1) == target


def test_char0_pipeline():
    W = GeneratorWindow(5, (5, 0), 2, 1)
    lie = char0_presentation(char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=W), "lie")
    charp = relations_mod_C3(simplest_setup(5, 1))
    assert [r.body for r in lie.relations] == [r.body for r in charp.relations]
    grp = char0_presentation(char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=W), "group")
    for r in grp.relations:
        assert word_to_lie(r.word, grp.universe) == r.body
    with pytest.raises(PresentationError):
        char0_setup(5, 2, 1, (1, 0), {(0, 1): 1})
    with pytest.raises(PresentationError):
        char0_presentation(f9_setup(1), "group")


def test_char0_A_is_beta_p():
    F = get_field(3, 2)
    g = F.gen().value
    s = char0_setup(3, 2, 2, (1, 0), {(0, 0): g}, window=GeneratorWindow(3, (3, 0), 2, 1))
    assert s.A[(0, 0)] == F.frob(g, 1)
    assert s.cbar0 == (3, 0)


def test_emitters(small):
    pres = relations_mod_C3(small)
    text = emit(pres, "json")
    assert parse_json(text) == pres
    doc = json.loads(text)
    assert list(doc) == sorted(doc)
    assert doc["generators"][-3:] == [{"kind": "D0"}, {"kind": "L", "m": 1}, {"kind": "L", "m": 2}]
    assert "coeff" in doc["relations"][1]["terms"][0]
    assert r"[D_{\bar 0}, \bar l^{(1)}]" in emit(pres, "latex")
    assert "R0(1): [D0,l1]" in emit(pres, "text")
    with pytest.raises(PresentationError):
        emit(pres, "yaml")
    empty = Presentation([], [], "lie", pres.params, {}, pres.universe)
    assert json.loads(emit(empty, "json"))["relations"] == []
    grp = char0_presentation(char0_setup(5, 2, 1, (1, 0), {(0, 0): 1}, window=small.window), "group")
    assert parse_json(emit(grp, "json")) == grp
    assert r"(\tau_{\bar 0}, \bar h^{(1)})" in emit(grp, "latex")
