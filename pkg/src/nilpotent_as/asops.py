"""The splitting operators S and R.

Every series b splits as b = S(b) + (sigma - 1) R(b), where S(b) lies in the
span of t^(-a) (a lex-positive and prime to p) with coefficients in k plus
F_p * alpha0.  On Lie series the operators use the total Frobenius, which
also shifts the generator index of D(a, n).
"""

from .base import split_p_power
from .liealg import LieSeries, _sigma_word
from .series import Series, WindowError


class SplitError(AssertionError):
    pass


def _sign(e):
    for v in e:
        if v:
            return 1 if v > 0 else -1
    return 0


def _add_term(out, key, c, F):
    v = F.add(out.get(key, 0), c)
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _lead(e):
    return next((i for i, v in enumerate(e) if v), len(e))


def op_S(b):
    F = b.field
    out = {}
    for e, c in b.terms.items():
        s = _sign(e)
        if s > 0:
            continue
        if s == 0:
            _add_term(out, e, F.mul(F.alpha0, F.trace(c)), F)
        else:
            a1, m = split_p_power(tuple(-v for v in e), F.p)
            _add_term(out, tuple(-v for v in a1), F.frob(c, -m), F)
    return Series(F, b.N, out, b.window)


def op_R(b):
    F = b.field
    p = F.p
    out = {}
    for e, c in b.terms.items():
        s = _sign(e)
        if s > 0:
            if b.window is None:
                raise WindowError("R of a positive term needs a window")
            if e < b.window and _lead(e) > _lead(b.window):
                raise WindowError(f"the Frobenius orbit of t^{e} never leaves the window {b.window}")
            i = 0
            ei = e
            while ei < b.window:
                _add_term(out, ei, F.neg(F.frob(c, i)), F)
                i += 1
                ei = tuple(p * v for v in ei)
        elif s == 0:
            for i in range(F.N0):
                for j in range(i):
                    _add_term(out, e, F.mul(F.frob(F.alpha0, j), F.frob(c, i)), F)
        else:
            _, m = split_p_power(tuple(-v for v in e), p)
            for i in range(1, m + 1):
                d = p ** i
                _add_term(out, tuple(v // d for v in e), F.frob(c, -i), F)
    return Series(F, b.N, out, b.window)


def split_check(b):
    """(S(b), R(b)), after checking b = S(b) + (sigma - 1) R(b) inside the window."""
    S = op_S(b)
    R = op_R(b)
    residual = b - S - (R.sigma(1) - R)
    if residual.terms:
        raise SplitError(f"splitting identity fails: {residual}")
    return S, R


# Lie series -----------------------------------------------------------------

def _sigma_term(e, w, c, i, U):
    """Terms of sigma^i(c t^e w) as a list of ((exp, word), coeff)."""
    F = U.field
    p = F.p
    if i >= 0:
        e2 = tuple(v * p ** i for v in e)
    else:
        d = p ** (-i)
        if any(v % d for v in e):
            raise ValueError(f"sigma^{i} undefined on exponent {e}")
        e2 = tuple(v // d for v in e)
    c2 = F.frob(c, i)
    return [((e2, w2), F.mul(c2, k)) for w2, k in _sigma_word(w, i % F.N0, F.N0, p, U.cls)]


def _apply(x, kind):
    U = x.universe
    F = U.field
    p = F.p
    out = {}
    for (e, w), c in x.terms.items():
        s = _sign(e)
        if kind == "S":
            if s > 0:
                continue
            if s == 0:
                for i in range(F.N0):
                    for key, v in _sigma_term(e, w, c, i, U):
                        _add_term(out, key, F.mul(F.alpha0, v), F)
            else:
                _, m = split_p_power(tuple(-v for v in e), p)
                for key, v in _sigma_term(e, w, c, -m, U):
                    _add_term(out, key, v, F)
            continue
        if s > 0:
            if not U.series_window:
                raise WindowError("R of a positive term needs a window")
            i = 0
            while True:
                terms = _sigma_term(e, w, c, i, U)
                kept = [(key, v) for key, v in terms if U.keeps(*key)]
                if not kept:
                    break
                for key, v in kept:
                    _add_term(out, key, F.neg(v), F)
                i += 1
        elif s == 0:
            for i in range(F.N0):
                for j in range(i):
                    a0 = F.frob(F.alpha0, j)
                    for key, v in _sigma_term(e, w, c, i, U):
                        _add_term(out, key, F.mul(a0, v), F)
        else:
            _, m = split_p_power(tuple(-v for v in e), p)
            for i in range(1, m + 1):
                for key, v in _sigma_term(e, w, c, -i, U):
                    _add_term(out, key, v, F)
    return LieSeries(U, out)


def op_S_lie(x):
    return _apply(x, "S")


def op_R_lie(x):
    return _apply(x, "R")


def split_check_lie(x):
    S = op_S_lie(x)
    R = op_R_lie(x)
    residual = x - S - (R.sigma(1) - R)
    if residual.terms:
        raise SplitError(f"splitting identity fails: {residual}")
    return S, R
