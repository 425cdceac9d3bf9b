"""Finite-support Laurent series in t_1, ..., t_N with an upper cutoff.

A :class:`Series` keeps the terms whose exponent is lexicographically below
its window ``U`` (``None`` means no cutoff).  Binary operations use the
tighter of the two windows.  Coefficients are raw field integers of a
:class:`~nilpotent_as.base.GF`.
"""

from dataclasses import dataclass, field as dc_field

from .base import GFElem, is_lex_positive, lex_sign, madd, mscale, msub, zero_index


class WindowError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


def min_window(u, v):
    if u is None:
        return v
    if v is None:
        return u
    return min(u, v)


def inverse_factorials(field):
    """[1/0!, 1/1!, ..., 1/(p-1)!] as field integers."""
    out = [1]
    acc = 1
    for k in range(1, field.p):
        acc = acc * k % field.p
        out.append(field.inv(acc))
    return out


class Series:
    __slots__ = ("field", "N", "terms", "window")

    def __init__(self, field, N, terms=None, window=None):
        self.field = field
        self.N = N
        self.window = tuple(window) if window is not None else None
        clean = {}
        if terms:
            for e, c in terms.items():
                if isinstance(c, GFElem):
                    c = c.value
                if c and (self.window is None or e < self.window):
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, field, exp, coeff=1, window=None):
        return cls(field, len(exp), {tuple(exp): coeff}, window)

    @classmethod
    def one(cls, field, N, window=None):
        return cls(field, N, {zero_index(N): 1}, window)

    def _new(self, terms, window):
        s = Series.__new__(Series)
        s.field = self.field
        s.N = self.N
        s.window = window
        s.terms = terms
        return s

    def _check(self, other):
        if other.field != self.field or other.N != self.N:
            raise ValueError("series over different fields or ranks")

    def with_window(self, window):
        return Series(self.field, self.N, self.terms, window)

    def __add__(self, other):
        self._check(other)
        F = self.field
        w = min_window(self.window, other.window)
        out = {e: c for e, c in self.terms.items() if w is None or e < w}
        for e, c in other.terms.items():
            if w is not None and e >= w:
                continue
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out, w)

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, GFElem)):
            return self.scale(other)
        self._check(other)
        F = self.field
        w = min_window(self.window, other.window)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = madd(e1, e2)
                if w is not None and e >= w:
                    continue
                v = F.add(out.get(e, 0), F.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._new(out, w)

    def scale(self, c):
        F = self.field
        if isinstance(c, GFElem):
            c = c.value
        elif isinstance(c, int):
            c = F.from_int(c)
        if not c:
            return self._new({}, self.window)
        return self._new({e: F.mul(c, v) for e, v in self.terms.items()}, self.window)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, Series) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Series(0)"
        parts = []
        for e in sorted(self.terms):
            parts.append(f"{self.field.format(self.terms[e])}*t^{e}")
        return "Series(" + " + ".join(parts) + (f"; U={self.window})" if self.window else ")")

    def coeff(self, exp):
        return GFElem(self.field, self.terms.get(tuple(exp), 0))

    def constant(self):
        return self.terms.get(zero_index(self.N), 0)

    def min_exponent(self):
        return min(self.terms) if self.terms else None

    def power(self, k):
        r = Series.one(self.field, self.N, self.window)
        for _ in range(k):
            r = r * self
        return r

    def sigma(self, n=1):
        """Frobenius: coefficients x -> x**(p**n), exponents a -> p**n * a."""
        F = self.field
        p = F.p
        if n >= 0:
            s = p ** n
            out = {}
            for e, c in self.terms.items():
                e2 = mscale(s, e)
                if self.window is None or e2 < self.window:
                    out[e2] = F.frob(c, n)
            return self._new(out, self.window)
        d = p ** (-n)
        out = {}
        for e, c in self.terms.items():
            if any(x % d for x in e):
                raise ValueError(f"exponent {e} is not divisible by {d}")
            out[tuple(x // d for x in e)] = F.frob(c, n)
        return self._new(out, self.window)


def ser_add(x, y):
    return x + y


def ser_mul(x, y):
    return x * y


def ser_invert(x):
    """Inverse of c*t^a*(1 + m) by the geometric series in -m."""
    if not x.terms:
        raise NotInvertibleError("zero is not invertible")
    F = x.field
    a = x.min_exponent()
    c = x.terms[a]
    cinv = F.inv(c)
    w = x.window
    # m = c^{-1} t^{-a} x - 1, supported on lex-positive exponents
    m = {msub(e, a): F.mul(cinv, v) for e, v in x.terms.items() if e != a}
    lead = Series.monomial(F, tuple(-v for v in a), cinv, w)
    if not m:
        return lead
    if w is None:
        raise NotInvertibleError("inverse has infinite support without a window")
    rel = madd(w, a)  # cutoff for the normalised factor (1 + m)^-1
    if lex_sign(rel) <= 0:
        return Series(F, x.N, {}, w)
    d = min(m)
    first_d = next(i for i, v in enumerate(d) if v)
    first_u = next(i for i, v in enumerate(rel) if v)
    if first_d > first_u:
        raise NotInvertibleError("geometric series does not terminate inside the window")
    mser = Series(F, x.N, {e: F.neg(v) for e, v in m.items()}, rel)
    total = Series.one(F, x.N, rel)
    power = Series.one(F, x.N, rel)
    while True:
        power = power * mser
        if not power.terms:
            break
        total = total + power
    out = {madd(e, mscale(-1, a)): F.mul(cinv, v) for e, v in total.terms.items()}
    return Series(F, x.N, out, w)


def artin_hasse(x, window=None):
    """E(x) as the truncated exponential sum_{k<p} x^k/k!.

    This agrees with the Artin-Hasse exponential as long as every kept
    exponent is below p times the smallest exponent of x.
    """
    w = min_window(x.window, window)
    F = x.field
    if not x.terms:
        return Series.one(F, x.N, w)
    lo = x.min_exponent()
    if not is_lex_positive(lo):
        raise ValueError("argument must be supported on lex-positive exponents")
    if w is None or w > mscale(F.p, lo):
        raise WindowError(f"window {w} exceeds p times the lowest exponent {lo}")
    x = x.with_window(w)
    return trunc_exp_series(x)


def trunc_exp_series(x):
    F = x.field
    invf = inverse_factorials(F)
    total = Series.one(F, x.N, x.window)
    power = Series.one(F, x.N, x.window)
    for k in range(1, F.p):
        power = power * x
        if not power.terms:
            break
        total = total + power.scale(invf[k])
    return total


def trunc_log_series(y):
    """sum_{1<=k<p} (-1)^(k+1) (y-1)^k / k, the inverse of trunc_exp_series."""
    F = y.field
    u = y - Series.one(F, y.N, y.window)
    total = Series(F, y.N, {}, y.window)
    power = Series.one(F, y.N, y.window)
    for k in range(1, F.p):
        power = power * u
        if not power.terms:
            break
        c = F.from_fraction(1 if k % 2 else -1, k)
        total = total + power.scale(c)
    return total


@dataclass(frozen=True)
class Omega:
    """The element omega, given through its coefficients.

    ``kind="omega"``: omega = sum beta_i t^(base + i), so that
    omega^p = sum beta_i^p t^(cbar0 + p i).
    ``kind="A"``: the coefficients are the A_i with
    E(omega^p) = 1 + sum A_i t^(cbar0 + p i); this is how omega enters in
    characteristic 0, where A_i = beta_i^p.
    """

    field: object
    base: tuple
    coeffs: dict = dc_field(default_factory=dict)
    kind: str = "omega"

    def __post_init__(self):
        if not self.base or self.base[0] <= 0:
            raise ValueError("cbar0/p must have positive first component")
        zero = zero_index(len(self.base))
        if not self.coeffs.get(zero, 0):
            raise ValueError("the leading coefficient at iota = 0 must be nonzero")
        for i in self.coeffs:
            if len(i) != len(self.base) or lex_sign(i) < 0:
                raise ValueError(f"bad iota {i}")
        if self.kind not in ("omega", "A"):
            raise ValueError("kind must be 'omega' or 'A'")
        object.__setattr__(self, "coeffs", {tuple(k): (v.value if isinstance(v, GFElem) else v) % self.field.q
                                            for k, v in self.coeffs.items() if v})

    @property
    def N(self):
        return len(self.base)

    @property
    def cbar0(self):
        return mscale(self.field.p, self.base)

    def _A_series(self, window):
        F = self.field
        return Series(F, self.N, {madd(self.cbar0, mscale(F.p, i)): v for i, v in self.coeffs.items()}, window)

    def omega_series(self, window=None):
        if self.kind != "omega":
            raise ValueError("omega itself is only available for kind='omega'")
        return Series(self.field, self.N, {madd(self.base, i): v for i, v in self.coeffs.items()}, window)

    def omega_p(self, window):
        """omega^p truncated to the window."""
        F = self.field
        if self.kind == "omega":
            return Series(F, self.N, {madd(self.cbar0, mscale(F.p, i)): F.frob(v, 1)
                                      for i, v in self.coeffs.items()}, window)
        if window is None or window > mscale(F.p, self.cbar0):
            raise WindowError("omega^p from A needs a window below p*cbar0")
        one = Series.one(F, self.N, window)
        return trunc_log_series(one + self._A_series(window))

    def E_omega_p(self, window):
        if self.kind == "A":
            if window is None or window > mscale(self.field.p, self.cbar0):
                raise WindowError("E(omega^p) needs a window below p*cbar0")
            return Series.one(self.field, self.N, window) + self._A_series(window)
        return artin_hasse(self.omega_p(window), window)

    def with_coeffs(self, coeffs):
        return Omega(self.field, self.base, coeffs, self.kind)


def omega_A_coeffs(omega, window=None):
    """The map iota -> A_iota read off from E(omega^p) = 1 + sum A t^(cbar0 + p iota)."""
    F = omega.field
    if window is None:
        window = mscale(F.p, omega.cbar0)
    E = omega.E_omega_p(window)
    out = {}
    c0 = omega.cbar0
    N = omega.N
    for e, v in sorted(E.terms.items()):
        if e == zero_index(N):
            continue
        d = msub(e, c0)
        if any(x % F.p for x in d):
            raise ValueError(f"unexpected exponent {e} in E(omega^p)")
        out[tuple(x // F.p for x in d)] = GFElem(F, v)
    return out


def _power_of_E(E, k):
    if k >= 0:
        return E.power(k)
    return ser_invert(E).power(-k)


def apply_h(m, omega, x):
    """The substitution t_m -> t_m E(omega^p), t_j -> t_j for j != m."""
    if not 1 <= m <= x.N:
        raise ValueError(f"m={m} out of range")
    if x.window is None:
        raise WindowError("apply_h needs a window")
    F = x.field
    out = Series(F, x.N, {}, x.window)
    cache = {}
    for e, c in x.terms.items():
        k = e[m - 1]
        rel = msub(x.window, e)
        key = (k, rel)
        if key not in cache:
            if lex_sign(rel) <= 0:
                cache[key] = Series(F, x.N, {}, rel)
            else:
                cache[key] = _power_of_E(omega.E_omega_p(rel), k)
        factor = cache[key]
        shifted = {madd(f, e): F.mul(c, v) for f, v in factor.terms.items()}
        out = out + Series(F, x.N, shifted, x.window)
    return out
