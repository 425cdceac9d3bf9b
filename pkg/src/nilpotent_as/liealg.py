"""Free nilpotent Lie algebras on the generators D(a, n), D0 and L(m).

Elements are kept in the Lyndon basis.  A basis monomial is a Lyndon word
(a tuple of generators) standing for its standard bracketing.  Coefficients
are raw integers of a :class:`~nilpotent_as.base.GF`.

Two element types share one kernel:

* :class:`LieElt` -- constant coefficients, keys ``((), word)``;
* :class:`LieSeries` -- coefficients in the windowed Laurent ring, keys
  ``(exponent, word)``.

Everything is computed modulo the ideal described by a :class:`Universe`:
bracket depth above the class bound, total weight at or above the weight
cutoff, and (for series) the weight-dependent exponent cutoff.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .base import GFElem, lex_sign, madd, mscale, zero_index
from .series import Series


class Gen(NamedTuple):
    kind: int
    a: tuple = ()
    n: int = 0
    m: int = 0

    def __repr__(self):
        if self.kind == 0:
            return "D0"
        if self.kind == 1:
            return f"D{self.a}" if self.n == 0 else f"D{self.a},{self.n}"
        return f"l{self.m}"


D0 = Gen(0)


def gen_D(a, n=0):
    return Gen(1, tuple(a), n, 0)


def gen_L(m):
    return Gen(2, (), 0, m)


class UniverseError(ValueError):
    pass


def weight_of(g, cbar0, l_weight=1):
    """Weight of a generator: the s with (s-1)*cbar0 <= a < s*cbar0."""
    if g.kind == 0:
        return 1
    if g.kind == 2:
        return l_weight
    a = g.a
    if lex_sign(a) < 0:
        raise ValueError(f"index {a} is lex-negative")
    s = 1
    while not a < mscale(s, cbar0):
        s += 1
    return s


# Lyndon words ---------------------------------------------------------------

def is_lyndon(w):
    n = len(w)
    if n == 0:
        return False
    return all(w < w[i:] for i in range(1, n))


def standard_factorization(w):
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("a single letter has no factorization")


@lru_cache(maxsize=None)
def expand(w):
    """Associative expansion of the standard bracketing of w, integer coefficients."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return _commutator_int(expand(u), expand(v))


def _commutator_int(x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            c = ca * cb
            ab = a + b
            ba = b + a
            out[ab] = out.get(ab, 0) + c
            out[ba] = out.get(ba, 0) - c
    return {k: v for k, v in out.items() if v}


def lyndon_reduce(poly, field):
    """Rewrite a Lie polynomial given by its associative expansion.

    ``poly`` maps words to field integers.  The smallest word of a Lie
    polynomial is Lyndon and occurs only in its own basis element, which
    gives a triangular elimination.
    """
    poly = {w: c for w, c in poly.items() if c}
    out = {}
    F = field
    while poly:
        w = min(poly)
        c = poly[w]
        if not is_lyndon(w):
            raise ValueError(f"not a Lie polynomial (leading word {w})")
        out[w] = c
        for u, k in expand(w).items():
            v = F.sub(poly.get(u, 0), F.mul(c, F.from_int(k)))
            if v:
                poly[u] = v
            else:
                poly.pop(u, None)
    return out


@lru_cache(maxsize=None)
def bracket_words(u, v, p):
    """[P(u), P(v)] in the Lyndon basis as a tuple of (word, integer mod p)."""
    if u == v:
        return ()
    if u > v:
        return tuple((w, (-c) % p) for w, c in bracket_words(v, u, p))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    ex = _commutator_int(expand(u), expand(v))
    poly = {w: c % p for w, c in ex.items() if c % p}
    out = {}
    while poly:
        w = min(poly)
        c = poly[w]
        out[w] = c
        for x, k in expand(w).items():
            val = (poly.get(x, 0) - c * k) % p
            if val:
                poly[x] = val
            else:
                poly.pop(x, None)
    return tuple(sorted(out.items()))


# universes ------------------------------------------------------------------

@dataclass(frozen=True)
class Universe:
    """Where Lie elements live and what is truncated.

    ``cls``: class bound c, brackets of depth > c vanish.
    ``weight_cut``: monomials of total weight >= weight_cut vanish (None = off).
    ``series_window``: how series coefficients are cut off --
    None (no cutoff), ``"uniform"`` (drop exponents >= ``series_cut``) or
    ``"weighted"`` (drop t^e * w when e >= (weight_cut - wt(w)) * cbar0).
    ``flat_bound``: with a window, lex-positive exponents whose first
    component is 0 are also dropped once some component reaches this size in
    absolute value; the Frobenius orbit of such an exponent never leaves a
    lex window, so without this the operator R would not terminate.
    ``outer``: indices of auxiliary generators D(a, n); monomials with two or
    more of them are dropped.
    """

    field: object
    N: int = 1
    cls: int = 2
    cbar0: tuple = None
    weight_cut: int = None
    series_window: str = None
    series_cut: tuple = None
    flat_bound: int = None
    l_weight: int = 1
    outer: frozenset = None

    def __post_init__(self):
        if not 1 <= self.cls < self.field.p:
            raise UniverseError(f"class bound {self.cls} must be below p={self.field.p}")
        if self.series_window == "weighted":
            if self.cbar0 is None or self.weight_cut is None:
                raise UniverseError("weighted series window needs cbar0 and a weight cutoff")
        elif self.series_window == "uniform":
            if self.series_cut is None:
                raise UniverseError("uniform series window needs a cutoff")
        elif self.series_window is not None:
            raise UniverseError(f"unknown series window {self.series_window!r}")
        object.__setattr__(self, "_ww", {})
        object.__setattr__(self, "_oc", {})
        object.__setattr__(self, "_cut", {})
        object.__setattr__(self, "_hash", None)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.N, self.cls, self.cbar0, self.weight_cut,
                                                    self.series_window, self.series_cut, self.flat_bound,
                                                    self.l_weight, self.outer)))
        return self._hash

    @property
    def p(self):
        return self.field.p

    @property
    def N0(self):
        return self.field.N0

    def with_(self, **kw):
        d = dict(field=self.field, N=self.N, cls=self.cls, cbar0=self.cbar0, weight_cut=self.weight_cut,
                 series_window=self.series_window, series_cut=self.series_cut,
                 flat_bound=self.flat_bound, l_weight=self.l_weight, outer=self.outer)
        d.update(kw)
        return Universe(**d)

    def unflat(self):
        """This universe without the flat bound."""
        if self.flat_bound is None:
            return self
        try:
            return self._unflat
        except AttributeError:
            object.__setattr__(self, "_unflat", self.with_(flat_bound=None))
            return self._unflat

    def gen_weight(self, g):
        if self.cbar0 is None:
            return 1
        return weight_of(g, self.cbar0, self.l_weight)

    def word_weight(self, w):
        try:
            return self._ww[w]
        except KeyError:
            v = self._ww[w] = sum(self.gen_weight(g) for g in w)
            return v

    def outer_count(self, w):
        if not self.outer:
            return 0
        try:
            return self._oc[w]
        except KeyError:
            v = self._oc[w] = sum(1 for g in w if g.kind == 1 and g.a in self.outer)
            return v

    def keeps(self, exp, w, weight=None):
        if len(w) > self.cls:
            return False
        if self.outer and self.outer_count(w) > 1:
            return False
        windowed = bool(exp) and self.series_window is not None
        if self.weight_cut is None and not windowed:
            return True
        if weight is None:
            weight = self.word_weight(w)
        if self.weight_cut is not None and weight >= self.weight_cut:
            return False
        if windowed:
            return self.keeps_exp(exp, weight)
        return True

    def keeps_exp(self, exp, weight):
        if not exp < self.exp_cutoff(weight):
            return False
        if self.flat_bound is not None and exp[0] == 0 and exp > exp[:1] + (0,) * (len(exp) - 1):
            return max(abs(v) for v in exp) < self.flat_bound
        return True

    def exp_cutoff(self, weight):
        """Exclusive lex cutoff for a monomial of the given weight, or None."""
        try:
            return self._cut[weight]
        except KeyError:
            v = self._cut[weight] = self._exp_cutoff(weight)
            return v

    def _exp_cutoff(self, weight):
        if self.series_window is None:
            return None
        if self.series_window == "uniform":
            return self.series_cut
        return mscale(self.weight_cut - weight, self.cbar0)




# elements -------------------------------------------------------------------

class _Graded:
    __slots__ = ("universe", "terms")

    def __init__(self, universe, terms=None):
        self.universe = universe
        self.terms = {}
        if terms:
            U = universe
            for (e, w), c in terms.items():
                if isinstance(c, GFElem):
                    c = c.value
                if c and U.keeps(e, w):
                    self.terms[(e, w)] = c

    def _new(self, terms):
        x = self.__class__.__new__(self.__class__)
        x.universe = self.universe
        x.terms = terms
        return x

    def _check(self, other):
        if other.universe != self.universe:
            raise UniverseError("elements live in different universes")

    def _coerce(self, other):
        if isinstance(self, LieSeries) and isinstance(other, LieElt):
            return other.as_series(self.N)
        return other

    @property
    def field(self):
        return self.universe.field

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = F.add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self):
        F = self.field
        return self._new({k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def scale(self, c):
        F = self.field
        if isinstance(c, GFElem):
            c = c.value
        if not c:
            return self._new({})
        return self._new({k: F.mul(c, v) for k, v in self.terms.items()})

    def scale_int(self, k):
        return self.scale(self.field.from_int(k))

    def __mul__(self, c):
        if isinstance(c, int):
            return self.scale_int(c)
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return type(self) is type(other) and self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def bracket(self, other):
        return bracket(self, other)

    def sigma(self, n=1):
        return sigma_act(self, n)

    def filter(self, pred):
        return self._new({k: c for k, c in self.terms.items() if pred(k[0], k[1])})

    def depth_part(self, d):
        return self.filter(lambda e, w: len(w) == d)

    def weight(self):
        """Smallest weight occurring (None for zero)."""
        U = self.universe
        return min((U.word_weight(w) for _, w in self.terms), default=None)

    def words(self):
        return sorted({w for _, w in self.terms})


class LieElt(_Graded):
    """Element of the free nilpotent Lie algebra with constant coefficients."""

    __slots__ = ()

    @classmethod
    def gen(cls, universe, g, coeff=1):
        return cls(universe, {((), (g,)): coeff})

    @classmethod
    def from_words(cls, universe, mapping):
        return cls(universe, {((), tuple(w)): c for w, c in mapping.items()})

    @property
    def N(self):
        return self.universe.N

    def coeffs(self):
        """The map Lyndon word -> GFElem."""
        F = self.field
        return {w: GFElem(F, c) for (_, w), c in self.terms.items()}

    def as_series(self, N=None):
        N = self.universe.N if N is None else N
        z = zero_index(N)
        x = LieSeries.__new__(LieSeries)
        x.universe = self.universe
        x.terms = {(z, w): c for (_, w), c in self.terms.items()}
        return x

    def __repr__(self):
        return "LieElt(" + format_terms(self) + ")"


class LieSeries(_Graded):
    """Lie element with coefficients in the windowed Laurent ring."""

    __slots__ = ()

    @property
    def N(self):
        return self.universe.N

    @classmethod
    def term(cls, universe, exp, g_or_word, coeff=1):
        w = (g_or_word,) if isinstance(g_or_word, Gen) else tuple(g_or_word)
        return cls(universe, {(tuple(exp), w): coeff})

    @classmethod
    def from_series(cls, universe, mapping):
        """Build from a map word -> Series."""
        terms = {}
        for w, s in mapping.items():
            w = (w,) if isinstance(w, Gen) else tuple(w)
            for e, c in s.terms.items():
                terms[(e, w)] = c
        return cls(universe, terms)

    def coeff_series(self, word):
        U = self.universe
        word = tuple(word)
        return Series(U.field, U.N, {e: c for (e, w), c in self.terms.items() if w == word},
                      U.exp_cutoff(U.word_weight(word)))

    def series_map(self):
        out = {}
        for (e, w) in self.terms:
            out.setdefault(w, None)
        return {w: self.coeff_series(w) for w in sorted(out)}

    def at_exponent(self, exp):
        """The constant Lie element multiplying t^exp."""
        exp = tuple(exp)
        x = LieElt.__new__(LieElt)
        x.universe = self.universe
        x.terms = {((), w): c for (e, w), c in self.terms.items() if e == exp}
        return x

    def constant(self):
        return self.at_exponent(zero_index(self.N))

    def exponents(self):
        return sorted({e for e, _ in self.terms})

    def __repr__(self):
        return "LieSeries(" + format_terms(self) + ")"


def format_terms(x):
    if not x.terms:
        return "0"
    F = x.field
    parts = []
    for (e, w), c in sorted(x.terms.items()):
        mono = format_word(w)
        tpart = f"t^{e}*" if e else ""
        parts.append(f"{F.format(c)}*{tpart}{mono}")
    return " + ".join(parts)


def format_word(w):
    if len(w) == 1:
        return repr(w[0])
    u, v = standard_factorization(w)
    return f"[{format_word(u)},{format_word(v)}]"


# kernels --------------------------------------------------------------------

def _group_by_word(terms):
    groups = {}
    for (e, w), c in terms.items():
        groups.setdefault(w, []).append((e, c))
    return groups


def _word_info(terms, U):
    """[(word, weight, outer count, [(exp, coeff)])] sorted by weight."""
    groups = _group_by_word(terms)
    ww = U.word_weight
    oc = U.outer_count
    return sorted(((w, ww(w), oc(w), l) for w, l in groups.items()), key=lambda r: r[1])


def bracket_terms(X, Y, U):
    """Bracket of two term dicts in universe U."""
    F = U.field
    p = F.p
    mul = F._mul
    add = F._add
    gx = _word_info(X, U)
    gy = _word_info(Y, U)
    out = {}
    cls = U.cls
    cut = U.weight_cut
    sw = U.series_window is not None
    keeps_exp = U.keeps_exp
    fb = U.flat_bound
    for w1, wt1, o1, l1 in gx:
        d1 = len(w1)
        for w2, wt2, o2, l2 in gy:
            wt = wt1 + wt2
            if cut is not None and wt >= cut:
                break
            if d1 + len(w2) > cls or o1 + o2 > 1:
                continue
            br = bracket_words(w1, w2, p)
            if not br:
                continue
            if sw:
                ecut = U.exp_cutoff(wt)
            for e1, c1 in l1:
                for e2, c2 in l2:
                    if e1:
                        e = tuple(a + b for a, b in zip(e1, e2))
                        if sw and not (e < ecut and (fb is None or e[0] or keeps_exp(e, wt))):
                            continue
                    else:
                        e = e1
                    c12 = mul[c1][c2]
                    for w, k in br:
                        key = (e, w)
                        v = add[out.get(key, 0)][mul[c12][k]]
                        if v:
                            out[key] = v
                        else:
                            del out[key]
    return out


def bracket(x, y):
    """Lie bracket in Lyndon normal form, truncated by the universe."""
    if isinstance(x, LieSeries) and isinstance(y, LieElt):
        y = y.as_series(x.N)
    elif isinstance(x, LieElt) and isinstance(y, LieSeries):
        x = x.as_series(y.N)
    if x.universe != y.universe:
        raise UniverseError("elements live in different universes")
    return x._new(bracket_terms(x.terms, y.terms, x.universe))


def _shift_letter(g, k, N0):
    if g.kind != 1 or k % N0 == 0:
        return g
    return Gen(1, g.a, (g.n + k) % N0, 0)


def _eval_word(w, letter_image, U, cache):
    """Image of the basis element w under the Lie map given on letters.

    letter_image(g) returns a term dict with exponent ``()``.
    """
    if w in cache:
        return cache[w]
    if len(w) == 1:
        res = letter_image(w[0])
    else:
        u, v = standard_factorization(w)
        res = bracket_terms(_eval_word(u, letter_image, U, cache), _eval_word(v, letter_image, U, cache), U)
    cache[w] = res
    return res


@lru_cache(maxsize=None)
def _sigma_word(w, k, N0, p, cls):
    shifted = tuple(_shift_letter(g, k, N0) for g in w)
    if shifted == w or is_lyndon(shifted) and _same_bracketing(w, shifted):
        return ((shifted, 1),)
    return tuple(sorted(_sigma_word_slow(w, k, N0, p).items()))


def _same_bracketing(w, v):
    # shifting letters keeps the bracket tree; it is the standard one for v
    # exactly when the factorization positions agree all the way down
    if len(w) == 1:
        return True
    if not is_lyndon(v):
        return False
    u1, u2 = standard_factorization(w)
    v1, v2 = standard_factorization(v)
    if len(u1) != len(v1):
        return False
    return _same_bracketing(u1, v1) and _same_bracketing(u2, v2)


def _sigma_word_slow(w, k, N0, p):
    if len(w) == 1:
        return {(_shift_letter(w[0], k, N0),): 1}
    u, v = standard_factorization(w)
    su = _sigma_word_slow(u, k, N0, p)
    sv = _sigma_word_slow(v, k, N0, p)
    out = {}
    for a, ca in su.items():
        for b, cb in sv.items():
            for c, kk in bracket_words(a, b, p):
                out[c] = (out.get(c, 0) + ca * cb * kk) % p
    return {x: c for x, c in out.items() if c}


def sigma_act(x, n=1):
    """Total Frobenius sigma^n.

    Generators D(a, k) -> D(a, k+n), coefficients x -> x^(p^n) and, for
    series, exponents e -> p^n e (n < 0 needs exponents divisible by p^|n|).
    """
    U = x.universe
    F = U.field
    p = F.p
    N0 = F.N0
    out = {}
    if isinstance(x, LieSeries):
        if n >= 0:
            s = p ** n
        else:
            d = p ** (-n)
    for (e, w), c in x.terms.items():
        if e:
            if n >= 0:
                e2 = mscale(s, e)
            else:
                if any(v % d for v in e):
                    raise ValueError(f"sigma^{n} undefined on exponent {e}")
                e2 = tuple(v // d for v in e)
        else:
            e2 = e
        c2 = F.frob(c, n)
        for w2, k in _sigma_word(w, n % N0, N0, p, U.cls):
            if e2 and not U.keeps(e2, w2):
                continue
            key = (e2, w2)
            v = F.add(out.get(key, 0), F.mul(c2, k))
            if v:
                out[key] = v
            else:
                del out[key]
    return x._new(out)


def substitute(x, images):
    """Apply the Lie algebra map given on generators by ``images``.

    ``images`` maps Gen -> LieElt (missing generators are fixed).  Works on
    LieElt and LieSeries (the map is extended k((t))-linearly).
    """
    U = x.universe
    F = U.field
    cache = {}

    def letter_image(g):
        if g in images:
            return images[g].terms
        return {((), (g,)): 1}

    out = {}
    for (e, w), c in x.terms.items():
        img = _eval_word(w, letter_image, U, cache)
        for (_, w2), c2 in img.items():
            if e and not U.keeps(e, w2):
                continue
            key = (e, w2)
            v = F.add(out.get(key, 0), F.mul(c, c2))
            if v:
                out[key] = v
            else:
                del out[key]
    return x._new(out)


def derivation(x, images):
    """Apply the derivation given on generators by ``images`` (Gen -> LieElt)."""
    U = x.universe
    F = U.field
    out = {}
    for (e, w), c in x.terms.items():
        for (_, w2), c2 in _derive_word(w, images, U).items():
            if e and not U.keeps(e, w2):
                continue
            key = (e, w2)
            v = F.add(out.get(key, 0), F.mul(c, c2))
            if v:
                out[key] = v
            else:
                del out[key]
    return x._new(out)


def _derive_word(w, images, U):
    if len(w) == 1:
        img = images.get(w[0])
        return dict(img.terms) if img is not None else {}
    u, v = standard_factorization(w)
    left = bracket_terms(_derive_word(u, images, U), {((), v): 1}, U)
    right = bracket_terms({((), u): 1}, _derive_word(v, images, U), U)
    F = U.field
    for k, c in right.items():
        val = F.add(left.get(k, 0), c)
        if val:
            left[k] = val
        else:
            left.pop(k, None)
    return left


def reduce_mod_weight(x, s):
    U = x.universe
    return x.filter(lambda e, w: U.word_weight(w) < s)


def reduce_mod_depth(x, s):
    return x.filter(lambda e, w: len(w) < s)


def mul_series(x, s):
    """Multiply every coefficient of the LieSeries x by the Series s."""
    U = x.universe
    F = U.field
    out = {}
    for (e, w), c in x.terms.items():
        wt = None
        for f, v in s.terms.items():
            e2 = madd(e, f)
            if wt is None:
                wt = U.word_weight(w)
            if not U.keeps(e2, w, wt):
                continue
            key = (e2, w)
            val = F.add(out.get(key, 0), F.mul(c, v))
            if val:
                out[key] = val
            else:
                del out[key]
    return x._new(out)


def map_exponent_coeffs(x, fn):
    """Replace each t^e by the Series fn(e) (a coefficient-ring map)."""
    U = x.universe
    F = U.field
    out = {}
    for (e, w), c in x.terms.items():
        wt = U.word_weight(w)
        for f, v in fn(e).terms.items():
            if not U.keeps(f, w, wt):
                continue
            key = (f, w)
            val = F.add(out.get(key, 0), F.mul(c, v))
            if val:
                out[key] = val
            else:
                del out[key]
    return x._new(out)
