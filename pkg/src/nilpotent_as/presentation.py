"""Presentations modulo third commutators.

The relation bodies are kept in "body = 0" form as Lie elements over k in a
universe of class 2 with weight cutoff 3 (so "mod C3").  The generators are
D(a, n) for window indices a < cbar0, D0 and the elements l1..lN (Gen kind
L).  Group-form relations (k = F_p only) are products of commutator powers
(x, y)^e whose factors are short group words in the generators.
"""

import json
from dataclasses import dataclass, field as dc_field

from .base import get_field, index_in_Zplus, lex_sign, madd, mscale, msub
from .liealg import D0, Gen, LieElt, Universe, gen_D, gen_L, sigma_act, substitute
from .series import Omega
from .solver import GeneratorWindow, Setup


class PresentationError(ValueError):
    pass


# closed forms -----------------------------------------------------------------

def presentation_universe(setup):
    return Universe(setup.field, setup.N, 2, setup.cbar0, weight_cut=3)


def _bracket_elt(U, x, y, c):
    """c * [x, y] for generators x, y as a LieElt."""
    return LieElt(U, {((), (x,)): 1}).bracket(LieElt(U, {((), (y,)): 1})).scale(c) if c else LieElt(U)


def _max_norm(indices):
    return max((abs(v) for a in indices for v in a), default=0)


def _pair_sums(target, W):
    """Ordered pairs (a1, a2) of window indices with a1 + a2 = target."""
    return [(a1, msub(target, a1)) for a1 in W.core if W.in_core(msub(target, a1))]


def _half(F):
    return F.inv(2 % F.p)


def closed_form_V0(setup, m, universe=None):
    """-1/2 sum_{iota, n} sigma^n(A_iota sum_{a1+a2=cbar0+p iota} a1^(m) [D(a1), D(a2)])."""
    U = universe or presentation_universe(setup)
    F = setup.field
    W = setup.window
    total = LieElt(U)
    for iota, A in sorted(setup.A.items()):
        T = madd(setup.cbar0, mscale(F.p, iota))
        inner = LieElt(U)
        for a1, a2 in _pair_sums(T, W):
            k = F.from_int(a1[m - 1])
            inner = inner + _bracket_elt(U, gen_D(a1), gen_D(a2), F.mul(A, k))
        for n in range(F.N0):
            total = total + sigma_act(inner, n)
    return total.scale(F.neg(_half(F)))


def _n_bound(setup, a):
    """Largest n for which p^n-scaled index sums can still land in the window."""
    F = setup.field
    R = 2 * _max_norm(setup.window.core) + max(abs(v) for v in a) + 1
    n = 0
    while F.p ** (n + 1) <= R * F.p:
        n += 1
    return n


def closed_form_Va(setup, m, a, universe=None):
    """The congruence for V_a^(m) mod C3; a sum term is kept iff all its indices lie in the window."""
    U = universe or presentation_universe(setup)
    F = setup.field
    p = F.p
    W = setup.window
    a = tuple(a)
    nmax = _n_bound(setup, a)
    total = LieElt(U)
    for iota, A in sorted(setup.A.items()):
        T = madd(setup.cbar0, mscale(p, iota))
        # p^n a1 + a2 = p^n T + a, n >= 1
        for n in range(1, nmax + 1):
            inner = LieElt(U)
            for a1 in W.core:
                a2 = madd(a, mscale(p ** n, msub(T, a1)))
                if W.in_core(a2):
                    k = F.from_int(a1[m - 1])
                    inner = inner + _bracket_elt(U, gen_D(a1), gen_D(a2, -n % F.N0), F.mul(A, k))
            total = total - sigma_act(inner, n)
        # linear term
        b = madd(T, a)
        if W.in_core(b):
            total = total - LieElt(U, {((), (gen_D(b),)): F.mul(A, F.from_int(a[m - 1]))})
        # sigma^(-n), n >= 0
        for n in range(0, nmax + 1):
            inner = LieElt(U)
            for a1, a2 in _pair_sums(madd(T, mscale(p ** n, a)), W):
                inner = inner + _bracket_elt(U, gen_D(a1), gen_D(a2), F.mul(A, F.from_int(a1[m - 1])))
            total = total - sigma_act(inner, -n).scale(_half(F))
    return total


# relations --------------------------------------------------------------------

@dataclass
class Relation:
    """One relation: ``body`` = 0 in the Lie algebra; ``word`` its group form (or None)."""

    kind: str
    args: tuple
    body: LieElt
    word: list = None
    twist: int = 0

    @property
    def label(self):
        if self.kind == "R":
            return f"R({self.args[0]},{self.args[1]})"
        if self.kind == "R0":
            return f"R0({self.args[0]})"
        a, i, j = self.args
        base = f"Ra({','.join(map(str, a))};{i},{j})"
        return base if not self.twist else f"{base}[n={self.twist}]"

    def key(self):
        return (self.label, tuple(sorted(self.body.terms.items())), _word_key(self.word))

    def __eq__(self, other):
        return isinstance(other, Relation) and self.key() == other.key()


def _word_key(word):
    if word is None:
        return None
    return tuple((tuple(x), tuple(y), e) for x, y, e in word)


@dataclass
class Presentation:
    generators: list
    relations: list
    form: str
    params: dict
    window: dict = dc_field(default_factory=dict)
    universe: object = None

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.generators == other.generators
                and self.form == other.form and self.params == other.params and self.window == other.window
                and [r.key() for r in self.relations] == [r.key() for r in other.relations])

    def relation(self, label):
        for r in self.relations:
            if r.label == label:
                return r
        raise KeyError(label)


def _l_images(U, N):
    return [LieElt(U, {((), (gen_L(m),)): 1}) for m in range(1, N + 1)]


def minimal_generators(setup):
    F = setup.field
    gens = [gen_D(a, n) for a in setup.window.core if a < setup.cbar0 for n in range(F.N0)]
    return sorted(gens) + [D0] + [gen_L(m) for m in range(1, setup.N + 1)]


def full_generators(setup):
    F = setup.field
    gens = [gen_D(a, n) for a in setup.window.core for n in range(F.N0)]
    return sorted(gens) + [D0] + [gen_L(m) for m in range(1, setup.N + 1)]


def _params(setup, cls, mode, beta=None):
    F = setup.field
    A = {iota: list(F.coords(v)) for iota, v in sorted(relevant_A(setup).items())}
    out = {"p": F.p, "N": setup.N, "N0": F.N0, "modulus": list(F.modulus), "cbar0": list(setup.cbar0),
           "mode": mode, "class": cls,
           "A": [{"iota": list(i), "coeff": c} for i, c in A.items()]}
    return out


def relevant_A(setup):
    """The A_iota the presentation mod C3 can depend on: iota < cbar0 / p."""
    F = setup.field
    bound = tuple(v // F.p for v in setup.cbar0)
    return {i: v for i, v in setup.A.items() if i < bound and v}


def _window_meta(setup):
    W = setup.window
    return {"s_max": W.s_max, "box": W.box}


def full_presentation(setup, cls=2, mode="char_p"):
    """All window generators, relations [D_a, l^(m)] - V_a^(m) for every a, m."""
    U = presentation_universe(setup)
    F = setup.field
    ls = _l_images(U, setup.N)
    rels = []
    for i in range(1, setup.N + 1):
        for j in range(i + 1, setup.N + 1):
            rels.append(Relation("R", (i, j), ls[i - 1].bracket(ls[j - 1])))
    D0e = LieElt(U, {((), (D0,)): 1})
    for m in range(1, setup.N + 1):
        rels.append(Relation("R0", (m,), D0e.bracket(ls[m - 1]) - closed_form_V0(setup, m, U)))
    for a in setup.window.core:
        Da = LieElt(U, {((), (gen_D(a),)): 1})
        for m in range(1, setup.N + 1):
            body = Da.bracket(ls[m - 1]) - closed_form_Va(setup, m, a, U)
            for n in range(F.N0):
                rels.append(Relation("T", (a, m, m), sigma_act(body, n), twist=n))
    return Presentation(full_generators(setup), rels, "lie", _params(setup, cls, mode), _window_meta(setup), U)


def choose_m(a, p):
    """Smallest m with a^(m) prime to p."""
    for m, v in enumerate(a, 1):
        if v % p:
            return m
    raise PresentationError(f"index {a} has no coordinate prime to p")


def eliminate_generators(pres, setup):
    """Remove D(b, n) with b > cbar0 using [D_a, l^(m_a)] = V_a^(m_a), a = b - cbar0.

    The remaining relations T_a(m), m != m_a, become
    -(1/a^(m_a)) * R_a(m_a, m) (up to the orientation of the index pair) and
    are relabelled as R_a(i, j), i < j.
    """
    U = pres.universe
    F = setup.field
    p = F.p
    c0 = setup.cbar0
    W = setup.window
    extra = sorted({g.a for g in pres.generators if g.kind == 1 and g.a > c0}, reverse=True)
    if not extra:
        return pres
    T = {}
    for r in pres.relations:
        if r.kind == "T":
            T[(r.args[0], r.args[1], r.twist)] = r.body
    # expressions for eliminated generators, highest index first
    subst = {}
    for b in extra:
        a = msub(b, c0)
        if not (index_in_Zplus(a, p) and W.in_core(a) and a < c0):
            continue
        ma = choose_m(a, p)
        for n in range(F.N0):
            body = substitute(T[(a, ma, n)], subst)
            g = gen_D(b, n)
            coeff = body.terms.get(((), (g,)), 0)
            if not coeff:
                raise PresentationError(f"cannot eliminate {g}")
            rest = body - LieElt(U, {((), (g,)): coeff})
            subst[g] = rest.scale(F.neg(F.inv(coeff)))
    rels = [r for r in pres.relations if r.kind != "T"]
    for a in W.core:
        if not a < c0:
            continue
        ma = choose_m(a, p)
        am = F.from_int(a[ma - 1])
        for n in range(F.N0):
            for m in range(1, setup.N + 1):
                if m == ma:
                    continue
                body = substitute(T[(a, m, n)], subst)
                i, j = sorted((ma, m))
                scale = F.neg(am) if i == ma else am
                rels.append(Relation("Ra", (a, i, j), body.scale(scale), twist=n))
    rels = [Relation(r.kind, r.args, _drop_gens(r.body, subst), r.word, r.twist) for r in rels]
    eliminated = set(subst)
    gens = [g for g in pres.generators if g not in eliminated and not (g.kind == 1 and g.a > c0)]
    return Presentation(gens, rels, pres.form, pres.params, pres.window, U)


def _drop_gens(body, subst):
    return substitute(body, subst) if subst else body


def relation_Ra_unreduced(setup, a, i, j, universe=None):
    """R_a(i, j) = a^(j) ([D_a, l_i] - V_a^(i)) - a^(i) ([D_a, l_j] - V_a^(j)), linear terms cancelling."""
    U = universe or presentation_universe(setup)
    F = setup.field
    ls = _l_images(U, setup.N)
    Da = LieElt(U, {((), (gen_D(a),)): 1})
    ai, aj = F.from_int(a[i - 1]), F.from_int(a[j - 1])
    Ti = Da.bracket(ls[i - 1]) - closed_form_Va(setup, i, a, U)
    Tj = Da.bracket(ls[j - 1]) - closed_form_Va(setup, j, a, U)
    return Ti.scale(aj) - Tj.scale(ai)


def relations_mod_C3(setup, cls=2, mode="char_p"):
    """Minimal generators and the relations R(i,j), R0(m), R_a(i,j) mod C3."""
    W = setup.window
    if W.s_max != 2 or W.extra:
        setup = Setup(setup.omega, min(setup.cls, 2), GeneratorWindow(W.p, W.cbar0, 2, W.box))
    pres = eliminate_generators(full_presentation(setup, cls, mode), setup)
    pres.generators = minimal_generators(setup)
    order = {"R": 0, "R0": 1, "Ra": 2}
    pres.relations.sort(key=lambda r: (order[r.kind], r.twist, r.args))
    return pres


# characteristic 0 ------------------------------------------------------------

def char0_setup(p, N, N0, cbar2, beta, cls=2, window=None, modulus=None):
    """A_iota = beta_iota^p, cbar0 = p * cbar2."""
    F = get_field(p, N0, modulus)
    if not beta.get(tuple([0] * N)):
        raise PresentationError("beta at iota = 0 must be nonzero")
    if lex_sign(cbar2) <= 0:
        raise PresentationError("cbar2 must be lex-positive")
    A = {tuple(i): F.frob(v, 1) for i, v in beta.items() if v}
    omega = Omega(F, tuple(cbar2), A, kind="A")
    return Setup(omega, cls, window)


def char0_presentation(setup, form="lie", cls=2):
    pres = relations_mod_C3(setup, cls, mode="char_0")
    if form == "lie":
        return pres
    if form != "group":
        raise PresentationError(f"unknown form {form!r}")
    return to_group_form(pres)


def to_group_form(pres):
    """Rewrite Lie bodies as products of commutator powers (k = F_p only)."""
    U = pres.universe
    F = U.field
    if F.N0 != 1:
        raise PresentationError("group form needs k = F_p (N0 = 1)")
    rels = [Relation(r.kind, r.args, r.body, body_to_word(r.body), r.twist) for r in pres.relations]
    return Presentation(pres.generators, rels, "group", pres.params, pres.window, U)


def body_to_word(body):
    """[x, y] terms -> (x, y)^e factors; terms [x, l_m] sharing x merge into one factor."""
    F = body.field
    merged = {}
    plain = []
    for (_, w), c in sorted(body.terms.items()):
        if len(w) != 2:
            raise PresentationError(f"not a class-2 relation body: {w}")
        x, y = w
        if F.N0 != 1 and c >= F.p:
            raise PresentationError("group form needs prime-field coefficients")
        if y.kind == 2 and x.kind != 2:
            merged.setdefault(x, []).append((y, c))
        else:
            plain.append(([(x, 1)], [(y, 1)], c))
    word = [([(x, 1)], sorted(ls), 1) for x, ls in sorted(merged.items())]
    return word + plain


def word_to_lie(word, U):
    """Evaluate a group word through the CH law; the result is a LieElt."""
    from .chgroup import ch_compose, group_commutator
    F = U.field

    def atom(gens):
        xs = [LieElt(U, {((), (g,)): F.from_int(e)}) for g, e in gens]
        return ch_compose(*xs) if len(xs) > 1 else xs[0]

    factors = [group_commutator(atom(x), atom(y)).scale(F.from_int(e)) for x, y, e in word]
    if not factors:
        return LieElt(U)
    return ch_compose(*factors) if len(factors) > 1 else factors[0]


# reference lists -------------------------------------------------------------

def _lit_bracket(U, W, x, y, c):
    """c [D_x, D_y] if both indices are window generators, else 0; mod weight 3."""
    F = U.field
    gx = x if isinstance(x, Gen) else gen_D(x)
    gy = y if isinstance(y, Gen) else gen_D(y)
    for g in (gx, gy):
        if g.kind == 1 and not (index_in_Zplus(g.a, F.p) and W.in_core(g.a)):
            return LieElt(U)
    return _bracket_elt(U, gx, gy, F.from_int(c))


def reference_simplest_relations(setup, variant="char_p"):
    """Reference relation list for the simplest example, written out term by term.

    N = 2, N0 = 1, cbar0 = (p, 0), A_0 = 1.  ``variant="char_0"`` uses the
    group-level list of the characteristic-0 example, which starts the
    R0(2) sum at alpha = 1.  Terms are restricted to the window and reduced
    mod weight 3.
    """
    F = setup.field
    p = F.p
    if setup.N != 2 or F.N0 != 1 or setup.cbar0 != (p, 0):
        raise PresentationError("the reference list is for N = 2, N0 = 1, cbar0 = (p, 0)")
    U = presentation_universe(setup)
    W = setup.window
    B = W.box
    ls = _l_images(U, 2)
    D0e = LieElt(U, {((), (D0,)): 1})
    rels = [Relation("R", (1, 2), ls[0].bracket(ls[1]))]
    half = (p - 1) // 2
    gammas = range(-B - 1, B + 2)
    for m in (1, 2):
        body = D0e.bracket(ls[m - 1])
        lo = 1 if (m == 1 or variant == "char_0") else 0
        for alpha in range(lo, half + 1):
            for g in gammas:
                coeff = alpha if m == 1 else g
                body = body + _lit_bracket(U, W, (alpha, g), (p - alpha, -g), coeff)
        rels.append(Relation("R0", (m,), body))
    ras = []
    for a in W.core:
        if not a < setup.cbar0:
            continue
        Da = LieElt(U, {((), (gen_D(a),)): 1})
        body = Da.bracket(ls[0].scale(F.from_int(a[1])) - ls[1].scale(F.from_int(a[0])))
        if a[0] == 0:
            for g in range(-B - 2 * p, B + 2 * p):
                body = body - _lit_bracket(U, W, (p - 1, g), (p, a[1] - p * g), a[1])
        n = 1
        while p ** n <= 2 * B + abs(a[1]) + 1:
            for beta in range(1, 2 * B + 2):
                if beta % p:
                    body = body + _lit_bracket(U, W, (p, -beta), madd(a, (0, p ** n * beta)), a[0] * beta)
            n += 1
        target = madd((p, 0), a)
        inner = LieElt(U)
        for b in W.core:
            c = msub(target, b)
            inner = inner + _lit_bracket(U, W, b, c, b[0] * c[1] - b[1] * c[0])
        body = body + inner.scale(_half(F))
        ras.append(Relation("Ra", (a, 1, 2), body))
    return rels + sorted(ras, key=lambda r: r.args)


def word_to_lie_mod_C3(word, U):
    """Bilinear evaluation of a commutator word: (x, y)^e -> e [log x, log y] mod C3."""
    F = U.field
    total = LieElt(U)
    for x, y, e in word:
        for g, k in x:
            for h, k2 in y:
                total = total + _bracket_elt(U, g, h, F.from_int(e * k * k2))
    return total


def normalize_word(word, U):
    """Canonical form of a group word mod C3."""
    return body_to_word(word_to_lie_mod_C3(word, U))


def _lit_factor(W, p, b, c, e):
    gens = []
    for x in (b, c):
        if not isinstance(x, Gen):
            if not (index_in_Zplus(x, p) and W.in_core(x)):
                return None
            x = gen_D(x)
        gens.append(x)
    return ([(gens[0], 1)], [(gens[1], 1)], e)


def reference_zeta_group_relations(setup):
    """Reference group relation list for the cyclotomic two-dimensional field, factor by factor.

    cbar0 = (p, 0), beta_0 = 1, other beta_iota = 0.  Exponents are integers
    (1/2 read as the inverse of 2 mod p); factors with an index outside the
    window are dropped.
    """
    F = setup.field
    p = F.p
    if setup.N != 2 or F.N0 != 1 or setup.cbar0 != (p, 0):
        raise PresentationError("the reference list is for N = 2, N0 = 1, cbar0 = (p, 0)")
    U = presentation_universe(setup)
    W = setup.window
    B = W.box
    half = (p + 1) // 2
    l1, l2 = gen_L(1), gen_L(2)
    out = [Relation("R", (1, 2), LieElt(U), [([(l1, 1)], [(l2, 1)], 1)])]
    for m in (1, 2):
        word = [([(D0, 1)], [(gen_L(m), 1)], 1)]
        for alpha in range(1, (p - 1) // 2 + 1):
            for g in range(-B, B + 1):
                f = _lit_factor(W, p, (alpha, g), (p - alpha, -g), alpha if m == 1 else g)
                if f:
                    word.append(f)
        out.append(Relation("R0", (m,), LieElt(U), word))
    for a in W.core:
        if not a < setup.cbar0:
            continue
        word = [([(gen_D(a), 1)], [(l1, a[1]), (l2, -a[0])], 1)]
        if a[0] == 0:
            for g in range(-B - 2 * p, B + 2 * p):
                f = _lit_factor(W, p, (p - 1, g), (p, a[1] - p * g), -a[1])
                if f:
                    word.append(f)
        n = 1
        while p ** n <= 2 * B + abs(a[1]) + 1:
            for beta in range(1, 2 * B + 2):
                if beta % p:
                    f = _lit_factor(W, p, (p, -beta), madd(a, (0, p ** n * beta)), a[0] * beta)
                    if f:
                        word.append(f)
            n += 1
        target = madd((p, 0), a)
        for b in W.core:
            c = msub(target, b)
            f = _lit_factor(W, p, b, c, (b[0] * c[1] - b[1] * c[0]) * half)
            if f:
                word.append(f)
        out.append(Relation("Ra", (a, 1, 2), LieElt(U), word))
    return [Relation(r.kind, r.args, word_to_lie_mod_C3(r.word, U), normalize_word(r.word, U)) for r in out]


# emitters -----------------------------------------------------------------

def _gen_json(g):
    if g.kind == 0:
        return {"kind": "D0"}
    if g.kind == 1:
        return {"kind": "D", "a": list(g.a), "n": g.n}
    return {"kind": "L", "m": g.m}


def _gen_from_json(d):
    if d["kind"] == "D0":
        return D0
    if d["kind"] == "D":
        return gen_D(tuple(d["a"]), d["n"])
    return gen_L(d["m"])


def _terms_json(body):
    F = body.field
    return [{"monomial": [_gen_json(g) for g in w], "coeff": list(F.coords(c))}
            for (_, w), c in sorted(body.terms.items())]


def _relation_json(r):
    out = {"label": r.label, "kind": r.kind, "args": _args_json(r.args), "twist": r.twist,
           "terms": _terms_json(r.body)}
    if r.word is not None:
        out["factors"] = [{"left": [[_gen_json(g), e] for g, e in x],
                           "right": [[_gen_json(g), e] for g, e in y], "exponent": ex}
                          for x, y, ex in r.word]
    return out


def _args_json(args):
    return [list(v) if isinstance(v, tuple) else v for v in args]


def to_json(pres):
    doc = {"params": pres.params, "form": pres.form, "window": pres.window,
           "generators": [_gen_json(g) for g in pres.generators],
           "relations": [_relation_json(r) for r in pres.relations]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_json(text):
    doc = json.loads(text)
    P = doc["params"]
    F = get_field(P["p"], P["N0"], tuple(P["modulus"]))
    U = Universe(F, P["N"], 2, tuple(P["cbar0"]), weight_cut=3)
    rels = []
    for r in doc["relations"]:
        terms = {}
        for t in r["terms"]:
            w = tuple(_gen_from_json(g) for g in t["monomial"])
            terms[((), w)] = F.from_coords(t["coeff"])
        args = tuple(tuple(v) if isinstance(v, list) else v for v in r["args"])
        word = None
        if "factors" in r:
            word = [([(_gen_from_json(g), e) for g, e in f["left"]],
                     [(_gen_from_json(g), e) for g, e in f["right"]], f["exponent"]) for f in r["factors"]]
        rels.append(Relation(r["kind"], args, LieElt(U, terms), word, r["twist"]))
    gens = [_gen_from_json(g) for g in doc["generators"]]
    return Presentation(gens, rels, doc["form"], P, doc["window"], U)


def _gen_text(g):
    if g.kind == 0:
        return "D0"
    if g.kind == 2:
        return f"l{g.m}"
    a = ",".join(map(str, g.a))
    return f"D({a})" if not g.n else f"D({a};{g.n})"


def _word_text(w):
    from .liealg import standard_factorization
    if len(w) == 1:
        return _gen_text(w[0])
    u, v = standard_factorization(w)
    return f"[{_word_text(u)},{_word_text(v)}]"


def _body_text(body):
    F = body.field
    if not body.terms:
        return "0"
    parts = []
    for (_, w), c in sorted(body.terms.items()):
        s = F.format(c)
        coeff = "" if s == "1" else (f"({s})*" if " " in s else f"{s}*")
        parts.append(coeff + _word_text(w))
    return " + ".join(parts)


def _atom_text(atom):
    out = []
    for g, e in atom:
        out.append(_gen_text(g) if e == 1 else f"{_gen_text(g)}^{e}")
    return "*".join(out)


def _word_factor_text(word, p):
    return " ".join(f"({_atom_text(x)},{_atom_text(y)})" + (f"^{e % p}" if e % p != 1 else "")
                    for x, y, e in word) or "1"


def to_text(pres):
    P = pres.params
    lines = [f"# p={P['p']} N={P['N']} N0={P['N0']} cbar0={tuple(P['cbar0'])} mode={P['mode']} "
             f"class={P['class']} form={pres.form} window={pres.window}"]
    lines.append("generators: " + ", ".join(_gen_text(g) for g in pres.generators))
    for r in pres.relations:
        if pres.form == "group":
            lines.append(f"{r.label}: {_word_factor_text(r.word, P['p'])}")
        else:
            lines.append(f"{r.label}: {_body_text(r.body)} = 0")
    return "\n".join(lines) + "\n"


def _gen_latex(g, group):
    if g.kind == 0:
        return r"\tau_{\bar 0}" if group else r"D_{\bar 0}"
    if g.kind == 2:
        return rf"\bar h^{{({g.m})}}" if group else rf"\bar l^{{({g.m})}}"
    a = "(" + ",".join(map(str, g.a)) + ")"
    if group:
        return rf"\tau_{{{a}}}"
    return rf"D_{{{a}}}" if not g.n else rf"D_{{{a},{g.n}}}"


def _word_latex(w):
    from .liealg import standard_factorization
    if len(w) == 1:
        return _gen_latex(w[0], False)
    u, v = standard_factorization(w)
    return f"[{_word_latex(u)}, {_word_latex(v)}]"


def _power_latex(g, k):
    base = _gen_latex(g, True)
    return base if k == 1 else f"{{{base}}}^{{{k}}}"


def _label_latex(r):
    if r.kind == "R":
        return rf"\mathcal R({r.args[0]},{r.args[1]})"
    if r.kind == "R0":
        return rf"\mathcal R_{{\bar 0}}({r.args[0]})"
    a, i, j = r.args
    twist = f",{r.twist}" if r.twist else ""
    return rf"\mathcal R_{{({','.join(map(str, a))}){twist}}}({i},{j})"


def to_latex(pres):
    F = pres.universe.field
    group = pres.form == "group"
    lines = [r"\begin{align*}"]
    for r in pres.relations:
        label = _label_latex(r)
        if group:
            parts = []
            for x, y, e in r.word:
                ax = "".join(_power_latex(g, k) for g, k in x)
                ay = "".join(_power_latex(g, k) for g, k in y)
                parts.append(f"({ax}, {ay})" + (f"^{{{e % F.p}}}" if e % F.p != 1 else ""))
            rhs = " ".join(parts) or "1"
        else:
            parts = []
            for (_, w), c in sorted(r.body.terms.items()):
                s = F.format(c)
                coeff = "" if s == "1" else (f"({s}) " if " " in s else s + " ")
                parts.append(coeff + _word_latex(w))
            rhs = " + ".join(parts) or "0"
        lines.append(rf"&{label}:\ & {rhs} \\")
    lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"


def emit(pres, fmt="text"):
    if fmt == "json":
        return to_json(pres)
    if fmt == "text":
        return to_text(pres)
    if fmt == "latex":
        return to_latex(pres)
    raise PresentationError(f"unknown format {fmt!r}")
