"""Campbell-Hausdorff group law through the truncated enveloping algebra.

A Lie element of class < p is embedded into the free associative algebra
(words of length at most the class bound), exponentiated with the
truncated exponential, multiplied, and brought back with the truncated
logarithm followed by a Lyndon-basis projection.
"""

from .base import madd, zero_index
from .liealg import LieElt, LieSeries, UniverseError, expand, is_lyndon


class AssocElt:
    """Element of the enveloping algebra modulo long words.

    ``terms`` maps ``(exponent, word)`` to a field integer; the empty word is
    the unit.  The same truncation rules as the universe apply, word weight
    standing in for monomial weight, except the flat bound: that cutoff is
    not an ideal, so it is only applied when converting back to Lie elements.
    """

    __slots__ = ("universe", "terms", "series")

    def __init__(self, universe, terms=None, series=False):
        self.universe = universe
        self.series = series
        self.terms = {}
        if terms:
            for (e, w), c in terms.items():
                if c and self._keeps(e, w):
                    self.terms[(e, w)] = c

    def _keeps(self, e, w):
        return self.universe.unflat().keeps(e, w)

    def _new(self, terms):
        x = AssocElt.__new__(AssocElt)
        x.universe = self.universe
        x.series = self.series
        x.terms = terms
        return x

    @classmethod
    def one(cls, universe, series=False):
        e = zero_index(universe.N) if series else ()
        return cls(universe, {(e, ()): 1}, series)

    def __add__(self, other):
        F = self.universe.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = F.add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self):
        F = self.universe.field
        return self._new({k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.universe.field
        if not c:
            return self._new({})
        return self._new({k: F.mul(c, v) for k, v in self.terms.items()})

    def _groups(self):
        """Terms grouped by (word length, word weight)."""
        U = self.universe
        out = {}
        for (e, w), c in self.terms.items():
            out.setdefault((len(w), U.word_weight(w), U.outer_count(w)), []).append((e, w, c))
        return out

    def __mul__(self, other):
        U = self.universe
        F = U.field
        mul = F._mul
        add = F._add
        cls = U.cls
        cut = U.weight_cut
        sw = U.series_window is not None
        out = {}
        right = other._groups()
        for (l1, wt1, o1), left in self._groups().items():
            for (l2, wt2, o2), terms2 in right.items():
                wt = wt1 + wt2
                if l1 + l2 > cls or (cut is not None and wt >= cut) or o1 + o2 > 1:
                    continue
                ecut = U.exp_cutoff(wt) if sw else None
                for e1, w1, c1 in left:
                    for e2, w2, c2 in terms2:
                        if e1:
                            e = tuple(a + b for a, b in zip(e1, e2))
                            if sw and not e < ecut:
                                continue
                        else:
                            e = e1
                        key = (e, w1 + w2)
                        v = add[out.get(key, 0)][mul[c1][c2]]
                        if v:
                            out[key] = v
                        else:
                            del out[key]
        return self._new(out)

    def __eq__(self, other):
        return isinstance(other, AssocElt) and self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        F = self.universe.field
        parts = [f"{F.format(c)}*{'t^' + str(e) + '*' if e else ''}{''.join(map(repr, w)) or '1'}"
                 for (e, w), c in sorted(self.terms.items())]
        return "AssocElt(" + (" + ".join(parts) or "0") + ")"

    def unit_part(self):
        return {e: c for (e, w), c in self.terms.items() if not w}

    def derive(self, letter_images=None, coeff_map=None):
        """Apply a derivation of the algebra.

        ``letter_images`` maps Gen -> AssocElt (Leibniz rule on words);
        ``coeff_map(exponent)`` returns a term dict {exponent: coeff} giving a
        derivation of the coefficient ring.
        """
        U = self.universe
        KU = U.unflat()
        F = U.field
        mul = F._mul
        add = F._add
        out = {}

        def put(e, w, c):
            if not KU.keeps(e, w):
                return
            key = (e, w)
            v = add[out.get(key, 0)][c]
            if v:
                out[key] = v
            else:
                del out[key]

        images = {g: list(img.terms.items()) for g, img in (letter_images or {}).items()}
        for (e, w), c in self.terms.items():
            if coeff_map is not None:
                for e2, c2 in coeff_map(e).items():
                    put(e2, w, mul[c][c2])
            for i, g in enumerate(w):
                img = images.get(g)
                if not img:
                    continue
                for (e2, u), c2 in img:
                    if len(w) - 1 + len(u) > U.cls:
                        continue
                    put(madd(e, e2) if e else e2, w[:i] + u + w[i + 1:], mul[c][c2])
        return self._new(out)

    def restrict(self):
        return self._new({k: c for k, c in self.terms.items() if self._keeps(*k)})


def lie_to_assoc(x):
    """Embed a LieElt / LieSeries into the enveloping algebra."""
    U = x.universe
    F = U.field
    out = {}
    for (e, w), c in x.terms.items():
        for word, k in expand(w).items():
            key = (e, word)
            v = F.add(out.get(key, 0), F.mul(c, F.from_int(k)))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return AssocElt(U, out, isinstance(x, LieSeries))


def assoc_to_lie(u):
    """Project a Lie polynomial of the enveloping algebra back to the Lyndon basis."""
    U = u.universe
    F = U.field
    by_exp = {}
    for (e, w), c in u.terms.items():
        if not w:
            raise ValueError("element has a unit component")
        by_exp.setdefault(e, {})[w] = c
    terms = {}
    for e, poly in by_exp.items():
        poly = dict(poly)
        while poly:
            w = min(poly)
            c = poly[w]
            if not is_lyndon(w):
                raise ValueError(f"not a Lie element: leading word {w}")
            terms[(e, w)] = c
            for word, k in expand(w).items():
                v = F.sub(poly.get(word, 0), F.mul(c, F.from_int(k)))
                if v:
                    poly[word] = v
                else:
                    poly.pop(word, None)
    cls = LieSeries if u.series else LieElt
    return cls(U, terms)


def _check_class(U):
    if U.cls >= U.field.p:
        raise UniverseError("class bound must be below p")


def trunc_exp(x):
    """sum_{0<=k<p} x^k / k! in the enveloping algebra."""
    U = x.universe
    _check_class(U)
    F = U.field
    series = isinstance(x, LieSeries)
    a = lie_to_assoc(x)
    total = AssocElt.one(U, series)
    power = AssocElt.one(U, series)
    fact = 1
    for k in range(1, F.p):
        power = power * a
        if not power.terms:
            break
        fact = fact * k % F.p
        total = total + power.scale(F.inv(fact))
    return total


def trunc_log(u):
    """sum_{1<=k<p} (-1)^(k+1) (u-1)^k / k, projected to the Lyndon basis."""
    U = u.universe
    F = U.field
    unit = u.unit_part()
    one_key = zero_index(U.N) if u.series else ()
    if unit != {one_key: 1}:
        raise ValueError("trunc_log needs constant term 1")
    v = u - AssocElt.one(U, u.series)
    total = AssocElt(U, {}, u.series)
    power = AssocElt.one(U, u.series)
    for k in range(1, F.p):
        power = power * v
        if not power.terms:
            break
        total = total + power.scale(F.from_fraction(1 if k % 2 else -1, k))
    return assoc_to_lie(total)


def ch_compose(*xs):
    """x1 o x2 o ... : the Campbell-Hausdorff product."""
    if not xs:
        raise ValueError("nothing to compose")
    if len(xs) == 1:
        return xs[0]
    if any(isinstance(x, LieSeries) for x in xs):
        N = xs[0].universe.N
        xs = [x.as_series(N) if isinstance(x, LieElt) else x for x in xs]
    prod = trunc_exp(xs[0])
    for x in xs[1:]:
        if x.universe != xs[0].universe:
            raise UniverseError("elements live in different universes")
        prod = prod * trunc_exp(x)
    return trunc_log(prod)


def ch_inverse(x):
    return -x


def adjoint(l, x):
    """(-l) o x o l."""
    return ch_compose(-l, x, l)


def ch_power(x, k):
    """k-fold composition x o ... o x (k >= 0)."""
    r = x._new({})
    for _ in range(k):
        r = ch_compose(r, x)
    return r


def group_commutator(x, y):
    """(x, y) = (-x) o (-y) o x o y."""
    return ch_compose(-x, -y, x, y)
