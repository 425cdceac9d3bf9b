"""Lift pairs and the recurrence for (c1, V).

Everything is computed for one finite generator window W.  Killing the
generators outside W is a Lie algebra map that commutes with sigma, S, R
and brackets, so the windowed computation is the image of the full one.
The only subtlety is that the S-part of a residual may sit at t^(-a) with
a outside W; those values are recorded too (they feed back at higher
depth), but only indices in W are reported as window results.

Truncation: bracket depth above the class bound c, total weight >= c + 1,
and the weighted exponent rule t^e * w dropped once e >= (c + 1 - wt(w)) *
cbar0.  Negative exponents of weight-w terms always stay above -wt * cbar0,
so a dropped term can never come back below exponent 0; the truncation is
exact for every constant and negative-exponent coefficient.
"""

from dataclasses import dataclass
from functools import cached_property

from .asops import op_R_lie, op_S_lie
from .base import index_in_Zplus, lex_sign, madd, mscale, zero_index
from .chgroup import AssocElt, ch_compose, lie_to_assoc
from .liealg import (D0, Gen, LieElt, LieSeries, Universe, bracket, derivation, gen_D, map_exponent_coeffs,
                     sigma_act, substitute, weight_of)
from .series import Series, inverse_factorials, ser_invert


class ConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class GeneratorWindow:
    """Indices a in Z_N^+(p) with wt(a) <= s_max and |a^(i)| <= box for i >= 2.

    ``extra`` holds auxiliary indices outside the box.  They are used as
    generators too, but only one of them may occur in a monomial.
    """

    p: int
    cbar0: tuple
    s_max: int = 2
    box: int = None
    extra: frozenset = frozenset()

    def __post_init__(self):
        if len(self.cbar0) > 1 and self.box is None:
            raise ValueError("a box bound is needed for N >= 2")

    @property
    def N(self):
        return len(self.cbar0)

    @cached_property
    def core(self):
        N = self.N
        top = mscale(self.s_max, self.cbar0)
        out = []
        rest = [()]
        for _ in range(N - 1):
            rest = [r + (v,) for r in rest for v in range(-self.box, self.box + 1)]
        for a1 in range(0, top[0] + 1):
            for r in rest:
                a = (a1,) + r
                if a < top and index_in_Zplus(a, self.p):
                    out.append(a)
        return tuple(sorted(out))

    @cached_property
    def indices(self):
        return tuple(sorted(set(self.core) | set(self.extra)))

    @cached_property
    def _index_set(self):
        return frozenset(self.indices)

    @cached_property
    def _core_set(self):
        return frozenset(self.core)

    def __contains__(self, a):
        return tuple(a) in self._index_set

    def in_core(self, a):
        return tuple(a) in self._core_set

    def with_extra(self, extra):
        extra = frozenset(tuple(a) for a in extra) - self._core_set
        return GeneratorWindow(self.p, self.cbar0, self.s_max, self.box, extra)

    def weight(self, a):
        return weight_of(gen_D(a), self.cbar0)

    def of_weight(self, s):
        return tuple(a for a in self.core if self.weight(a) == s)


@dataclass(frozen=True)
class Setup:
    """One instance: omega, class bound and generator window."""

    omega: object
    cls: int = 2
    window: GeneratorWindow = None
    flat_bound: int = None

    def __post_init__(self):
        F = self.omega.field
        if not 1 <= self.cls < F.p:
            raise ValueError(f"class bound must be in 1..{F.p - 1}")
        if self.window is None:
            box = None if self.omega.N == 1 else F.p
            object.__setattr__(self, "window", GeneratorWindow(F.p, self.omega.cbar0, self.cls, box))
        if self.flat_bound is None and self.omega.N > 1:
            object.__setattr__(self, "flat_bound", F.p ** 2 * self.cls * max(self.window.box, 1))

    @property
    def field(self):
        return self.omega.field

    @property
    def N(self):
        return self.omega.N

    @property
    def cbar0(self):
        return self.omega.cbar0

    @cached_property
    def universe(self):
        return Universe(self.field, self.N, self.cls, self.cbar0, weight_cut=self.cls + 1,
                        series_window="weighted", flat_bound=self.flat_bound,
                        outer=self.window.extra or None)

    @cached_property
    def core_universe(self):
        return self.universe.with_(outer=None)

    @cached_property
    def omega_p(self):
        return self.omega.omega_p(mscale(self.cls + 1, self.cbar0))

    @cached_property
    def A(self):
        """A_iota as field integers for every iota visible below (c+1)*cbar0."""
        F = self.field
        E = self.omega.E_omega_p(mscale(self.cls + 1, self.cbar0))
        out = {}
        for e, v in E.terms.items():
            if any(e):
                d = [x - y for x, y in zip(e, self.cbar0)]
                out[tuple(x // F.p for x in d)] = v
        return out

    @cached_property
    def e(self):
        return build_e(self)

    def reliable(self, e):
        """Whether the coefficient at exponent e is unaffected by the flat bound."""
        if self.flat_bound is None:
            return True
        lim = self.flat_bound // self.field.p
        return all(abs(v) < lim for v in e[1:])

    def with_omega(self, omega):
        return Setup(omega, self.cls, self.window, self.flat_bound)

    def extended(self, extra):
        """Same instance with auxiliary generators for the given indices."""
        return Setup(self.omega, self.cls, self.window.with_extra(extra), self.flat_bound)

    def project(self, x):
        """Kill the auxiliary generators and move x to the plain universe."""
        U = self.core_universe
        if not self.window.extra:
            return rehome(x, U)
        ext = self.window.extra
        terms = {k: c for k, c in x.terms.items()
                 if not any(g.kind == 1 and g.a in ext for g in k[1])}
        if isinstance(x, AssocElt):
            return AssocElt(U, terms, x.series)
        return x.__class__(U, terms)


def rehome(x, U):
    """The same terms, read in the universe U."""
    if x.universe == U:
        return x
    if isinstance(x, AssocElt):
        return AssocElt(U, x.terms, x.series)
    return x.__class__(U, x.terms)


def build_e(setup):
    """e = sum_{a in W} t^(-a) D_(a,0) + alpha0 D0."""
    U = setup.universe
    F = setup.field
    z = zero_index(setup.N)
    terms = {(z, (D0,)): F.alpha0}
    for a in setup.window.indices:
        terms[(tuple(-v for v in a), (gen_D(a),))] = 1
    return LieSeries(U, terms)


def d_operator(x, m, setup):
    """The derivation t^b -> b^(m) omega^p t^b on the coefficients."""
    F = setup.field
    X = setup.omega_p

    def fn(e):
        k = F.from_int(e[m - 1])
        if not k:
            return Series(F, setup.N, {})
        return Series(F, setup.N, {madd(e, f): F.mul(k, v) for f, v in X.terms.items()})

    return map_exponent_coeffs(x, fn)


def _ad_images(V, setup):
    """Gen -> LieElt for the derivation D_(a,n) -> sigma^n V[a], D0 -> V[0]."""
    F = setup.field
    images = {}
    for key, val in V.items():
        if key == "0":
            images[D0] = val
        else:
            for n in range(F.N0):
                images[gen_D(key, n)] = sigma_act(val, n) if n else val
    return images


def ad_operator(x, V, setup):
    return derivation(x, _ad_images(V, setup))


def _Ve(V, setup):
    """sum_a t^(-a) V[a] + alpha0 V[0] as a LieSeries."""
    U = setup.universe
    F = setup.field
    z = zero_index(setup.N)
    terms = {}
    for key, val in V.items():
        if key == "0":
            for (_, w), c in val.terms.items():
                k = (z, w)
                terms[k] = F.add(terms.get(k, 0), F.mul(F.alpha0, c))
        else:
            e = tuple(-v for v in key)
            for (_, w), c in val.terms.items():
                k = (e, w)
                terms[k] = F.add(terms.get(k, 0), c)
    return LieSeries(U, terms)


def _iterated(x, e, k):
    """[...[x, e], ..., e] with k copies of e."""
    for _ in range(k):
        if not x.terms:
            break
        x = bracket(x, e)
    return x


def _sum_iterated(x, e, ks, F):
    """sum_{k in ks} (1/k!) [...[x, e], ..., e] with k-1 copies of e."""
    invf = inverse_factorials(F)
    total = x._new({})
    cur = x
    done = 1
    for k in sorted(ks):
        cur = _iterated(cur, e, k - done)
        done = k
        if not cur.terms:
            break
        total = total + cur.scale(invf[k])
    return total


def recurrence_residual(setup, m, c1, V):
    """RHS - LHS of the recurrence for (c1, V)."""
    F = setup.field
    p = F.p
    e = setup.e
    de = d_operator(e, m, setup)
    Ve = _Ve(V, setup)
    sc = sigma_act(c1, 1)
    rhs = _sum_iterated(de, e, range(1, p), F)
    rhs = rhs - _sum_iterated(Ve, e, range(2, p), F)
    # third sum: sum_{1<=k<p} (1/k!) [...[sigma c1, e], ..., e] with k copies of e
    br = bracket(sc, e) if sc.terms else sc
    rhs = rhs - _sum_iterated(br, e, range(1, p), F)
    lhs = sc - c1 + Ve
    return rhs - lhs


@dataclass
class C1Solution:
    m: int
    c1: LieSeries
    V: dict
    setup: Setup

    def V_at(self, a):
        """V[a] as a LieElt (zero if never touched); a = "0" for the constant."""
        U = self.setup.universe
        key = "0" if a == "0" or (not isinstance(a, str) and not any(a)) else tuple(a)
        return self.V.get(key, LieElt(U))

    def window_V(self):
        W = self.setup.window
        return {a: v for a, v in self.V.items() if a == "0" or a in W}


def _add_V(V, key, val):
    if key in V:
        V[key] = V[key] + val
    else:
        V[key] = val


def _split_residual(r, setup):
    """S- and R-parts of a residual: (dict of V increments, c1 increment)."""
    S = op_S_lie(r)
    R = op_R_lie(r)
    F = setup.field
    U = setup.universe
    inc = {}
    for (e, w), c in S.terms.items():
        if not any(e):
            continue
        key = tuple(-v for v in e)
        inc.setdefault(key, {})[((), w)] = c
    out = {k: LieElt(U, t) for k, t in inc.items()}
    const = r.constant()
    if const.terms:
        tr = const
        for i in range(1, F.N0):
            tr = tr + sigma_act(const, i)
        if tr.terms:
            out["0"] = tr
    return out, R


def solve_c1(setup, m):
    """Depth-by-depth solution of the recurrence for fixed m.

    At every depth the S-part of the residual becomes the new V values and
    the R-part is added to c1.
    """
    if not 1 <= m <= setup.N:
        raise ValueError(f"m={m} out of range")
    U = setup.universe
    c1 = LieSeries(U)
    V = {}
    for d in range(1, setup.cls + 1):
        r = recurrence_residual(setup, m, c1, V).depth_part(d)
        inc, R = _split_residual(r, setup)
        for key, val in inc.items():
            _add_V(V, key, val)
        c1 = c1 + R
    V = {k: v for k, v in V.items() if v.terms}
    residual = recurrence_residual(setup, m, c1, V)
    if residual.terms:
        raise ConsistencyError(f"recurrence not solved: {residual}")
    return C1Solution(m, c1, V, setup)


def _outside_keys(*Vs, setup):
    W = setup.window
    return {a for V in Vs for a in V if a != "0" and not W.in_core(a)}


def enveloping_check(sol):
    """Independent check in the enveloping algebra.

    With E = trunc_exp(e), the pair (c1, V) must satisfy
    (d - ad) E = sigma(c1) E - E c1, d acting on coefficients and ad through
    the Leibniz rule with D_(a,n) -> sigma^n V[a].  The derivation ad does
    not commute with killing generators outside the window, so ad E is taken
    with auxiliary generators for every recorded index outside it.
    Returns the difference (zero on success).
    """
    from .chgroup import trunc_exp
    setup = sol.setup
    F = setup.field
    N = setup.N
    X = setup.omega_p
    m = sol.m

    def coeff_map(e):
        k = F.from_int(e[m - 1])
        if not k:
            return {}
        return {madd(e, f): F.mul(k, v) for f, v in X.terms.items()}

    E = trunc_exp(setup.e)
    ext = setup.extended(_outside_keys(sol.V, setup=setup))
    images = {g: lie_to_assoc(rehome(val, ext.universe).as_series(N))
              for g, val in _ad_images(sol.V, setup).items()}
    adE = ext.project(trunc_exp(ext.e).derive(letter_images=images))
    dE = E.derive(coeff_map=coeff_map)
    c = lie_to_assoc(sol.c1)
    sc = lie_to_assoc(sigma_act(sol.c1, 1))
    return rehome(dE, setup.core_universe) - adE - rehome(sc * E - E * c, setup.core_universe)


# lift pairs -------------------------------------------------------------------

@dataclass
class LiftPair:
    """(C, A): C a LieSeries, A an automorphism given on generators.

    ``images`` holds every generator image that differs from the default;
    generators inside the window default to themselves, others to 0.
    """

    m: int
    C: LieSeries
    images: dict
    setup: Setup

    def image(self, g):
        U = self.setup.universe
        if g in self.images:
            return self.images[g]
        if g.kind == 1 and g.n:
            base = self.images.get(gen_D(g.a, 0))
            if base is not None:
                return sigma_act(base, g.n)
        if g.kind == 1 and g.a not in self.setup.window:
            return LieElt(U)
        return LieElt.gen(U, g)

    def window_images(self):
        W = self.setup.window
        return {g: self.image(g) for g in [D0] + [gen_D(a) for a in W.core]}

    def outside_keys(self):
        W = self.setup.window
        return {g.a for g in self.images if g.kind == 1 and not W.in_core(g.a)}

    def apply(self, x):
        imgs = {}
        for (_, w) in x.terms:
            for g in w:
                if g not in imgs:
                    imgs[g] = self.image(g)
        return substitute(x, imgs)


def h_of_e(setup, m):
    """(id x h^(m)) e: t^(-a) -> t^(-a) E(omega^p)^(-a^(m))."""
    U = setup.universe
    F = setup.field
    N = setup.N
    z = zero_index(N)
    terms = {(z, (D0,)): F.alpha0}
    cache = {}
    for a in setup.window.indices:
        w = (gen_D(a),)
        wt = U.word_weight(w)
        if wt > setup.cls:
            continue
        cut = madd(U.exp_cutoff(wt), a)
        k = -a[m - 1]
        key = (k, cut)
        if key not in cache:
            E = setup.omega.E_omega_p(cut)
            cache[key] = E.power(k) if k >= 0 else ser_invert(E).power(-k)
        for f, v in cache[key].terms.items():
            terms[(madd(f, tuple(-x for x in a)), w)] = v
    return LieSeries(U, terms)


def _A_of_e(images, setup):
    """(A x id) e, including t^(-a) terms for indices outside the window."""
    U = setup.universe
    F = setup.field
    z = zero_index(setup.N)
    terms = {}
    for g, val in images.items():
        if g == D0:
            e, scale = z, F.alpha0
        else:
            e, scale = tuple(-x for x in g.a), 1
        for (_, w), c in val.terms.items():
            k = (e, w)
            terms[k] = F.add(terms.get(k, 0), F.mul(scale, c))
    return LieSeries(U, terms)


def lift_residual(setup, m, C, images, he=None):
    if he is None:
        he = h_of_e(setup, m)
    Ae = _A_of_e(images, setup)
    rhs = ch_compose(sigma_act(C, 1), Ae, -C)
    return he - rhs


def solve_lift_pair(setup, m):
    """Depth-by-depth solution of h_*(e) = sigma(C) o (A x id)(e) o (-C)."""
    U = setup.universe
    images = {D0: LieElt.gen(U, D0)}
    for a in setup.window.indices:
        images[gen_D(a)] = LieElt.gen(U, gen_D(a))
    C = LieSeries(U)
    he = h_of_e(setup, m)
    for d in range(1, setup.cls + 1):
        r = lift_residual(setup, m, C, images, he).depth_part(d)
        inc, R = _split_residual(r, setup)
        for key, val in inc.items():
            g = D0 if key == "0" else gen_D(key)
            images[g] = images[g] + val if g in images else val
        C = C + R
    res = lift_residual(setup, m, C, images, he)
    if res.terms:
        raise ConsistencyError(f"lift equation not solved: {res}")
    return LiftPair(m, C, images, setup)


def _weight_floor_ok(x, floor_depth1, floor_higher, U):
    for (_, w), c in x.terms.items():
        wt = U.word_weight(w)
        if len(w) == 1 and wt < floor_depth1:
            return False
        if len(w) > 1 and wt < floor_higher:
            return False
    return True


def linear_lift_term(setup, m, a):
    """-sum_iota A_iota a^(m) D_(a + cbar0 + p iota), inside the window."""
    U = setup.core_universe
    F = setup.field
    k = F.from_int(a[m - 1])
    terms = {}
    if k:
        for iota, A in setup.A.items():
            b = madd(madd(a, setup.cbar0), mscale(F.p, iota))
            if setup.window.in_core(b):
                terms[((), (gen_D(b),))] = F.neg(F.mul(A, k))
    return LieElt(U, terms)


def _composed(outer_lift, inner_ext):
    """Window images of outer o inner, inner solved with auxiliary generators."""
    setup = outer_lift.setup
    ext = inner_ext.setup
    images = {}
    for a in ext.window.indices:
        g = gen_D(a)
        images[g] = rehome(outer_lift.image(g), ext.universe)
    images[D0] = rehome(outer_lift.image(D0), ext.universe)
    out = {}
    for g in [D0] + [gen_D(a) for a in setup.window.core]:
        out[g] = ext.project(substitute(inner_ext.image(g), images))
    return out


def check_lift_congruences(lift, other=None):
    """Congruences for the automorphism part of a lift pair.

    * D0 image is D0 modulo weight >= 3 (depth 1) and weight >= 2 (depth >= 2);
    * D_a image is D_a - sum A a^(m) D_(a+cbar0+p iota) modulo weight
      >= wt(a)+2 (depth 1) and >= wt(a)+1 (depth >= 2);
    * with a second lift, the two automorphisms commute modulo weight
      >= wt+2 on every window generator.
    """
    setup = lift.setup
    U = setup.core_universe
    m = lift.m
    report = {}
    diff0 = rehome(lift.image(D0), U) - LieElt.gen(U, D0)
    report["D0"] = _weight_floor_ok(diff0, 3, 2, U)
    ok = True
    for a in setup.window.core:
        g = gen_D(a)
        s = U.gen_weight(g)
        diff = rehome(lift.image(g), U) - LieElt.gen(U, g) - linear_lift_term(setup, m, a)
        if not _weight_floor_ok(diff, s + 2, s + 1, U):
            ok = False
    report["Da"] = ok
    if other is not None:
        ext = setup.extended(lift.outside_keys() | other.outside_keys())
        ab = _composed(lift, solve_lift_pair(ext, other.m))
        ba = _composed(other, solve_lift_pair(ext, lift.m))
        ok = True
        for g in ab:
            s = U.gen_weight(g)
            if not _weight_floor_ok(ab[g] - ba[g], s + 2, s + 2, U):
                ok = False
        report["commutator"] = ok
    return report


# the commutator l[i, j] -----------------------------------------------------

def bracket_lij(sol_i, sol_j):
    """Constant Lie element l[i, j], computed two ways.

    Full form: (d_j - ad_j) c_i - (d_i - ad_i) c_j + [c_i, c_j], whose
    constant coefficient is the answer.  Short form:
    ad_i(c_j(0)) - ad_j(c_i(0)) + sum_iota [c_i(iota), c_j(-iota)].
    The ad terms need c_i, c_j with auxiliary generators for the recorded
    indices outside the window.  Returns (value, nonconstant part of the
    full form at exponents clear of the flat bound); raises if the two
    constant values differ.
    """
    setup = sol_i.setup
    i, j = sol_i.m, sol_j.m
    ext = setup.extended(_outside_keys(sol_i.V, sol_j.V, setup=setup))
    xi = solve_c1(ext, i)
    xj = solve_c1(ext, j)
    ci, cj = sol_i.c1, sol_j.c1

    def ad_ext(x, V):
        return ext.project(ad_operator(x, V, ext))

    full = (d_operator(ci, j, setup) - rehome(ad_ext(xi.c1, sol_j.V), setup.universe)) \
        - (d_operator(cj, i, setup) - rehome(ad_ext(xj.c1, sol_i.V), setup.universe)) + bracket(ci, cj)
    z = zero_index(setup.N)
    value_full = full.constant()
    nonconst = full.filter(lambda e, w: e != z and setup.reliable(e))
    short = ad_ext(xj.c1.constant(), sol_i.V) - ad_ext(xi.c1.constant(), sol_j.V)
    short = rehome(short, setup.universe)
    for iota in ci.exponents():
        if lex_sign(iota) == 0:
            continue
        right = cj.at_exponent(tuple(-v for v in iota))
        if right.terms:
            short = short + bracket(ci.at_exponent(iota), right)
    if short != value_full:
        raise ConsistencyError(f"the two evaluations of l[{i},{j}] differ: {value_full} vs {short}")
    return value_full, nonconst


def window_indices_in(x):
    return sorted({g.a for _, w in x.terms for g in w if isinstance(g, Gen) and g.kind == 1})
