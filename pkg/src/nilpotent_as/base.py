"""Finite fields F_q, q = p**N0, and exponent vectors in Z^N.

Field elements are encoded as integers 0 <= v < q: the base-p digits of v
are the coordinates over the polynomial basis 1, g, g**2, ... where g is a
root of the field modulus.  Small fields get full addition and
multiplication tables; every heavy kernel in the package works on these raw
integers, and :class:`GFElem` is the user-facing wrapper.
"""

from dataclasses import dataclass
from functools import lru_cache

# Conway polynomials, coefficients listed from the constant term upwards.
CONWAY = {
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}

MAX_TABLE_ORDER = 729


class FieldError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mulmod(x, y, modulus, p):
    deg = len(modulus) - 1
    prod = [0] * (2 * deg - 1) if deg > 0 else [0]
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] = (prod[i + j] + xi * yj) % p
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if c:
            for i in range(deg + 1):
                prod[k - deg + i] = (prod[k - deg + i] - c * modulus[i]) % p
    return prod[:deg]


def _is_irreducible(modulus, p):
    # trial division by every monic polynomial of degree <= deg/2
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            cand = [(code // p ** i) % p for i in range(d)] + [1]
            if _divides(cand, modulus, p):
                return False
    return True


def _divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    for k in range(len(g) - 1, df - 1, -1):
        c = g[k] * inv_lead % p
        if c:
            for i in range(df + 1):
                g[k - df + i] = (g[k - df + i] - c * f[i]) % p
    return not any(g[:df])


def default_modulus(p, N0):
    if N0 == 1:
        return (0, 1)
    if (p, N0) in CONWAY:
        return CONWAY[(p, N0)]
    for code in range(p ** N0):
        cand = tuple((code // p ** i) % p for i in range(N0)) + (1,)
        if cand[0] and _is_irreducible(cand, p):
            return cand
    raise FieldError("no irreducible polynomial found")


class GF:
    """The field F_{p^N0} with elements encoded as integers."""

    def __init__(self, p, N0=1, modulus=None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"p must be an odd prime, got {p}")
        if N0 < 1:
            raise FieldError("N0 must be positive")
        modulus = tuple(modulus) if modulus is not None else default_modulus(p, N0)
        if len(modulus) != N0 + 1 or modulus[-1] % p != 1:
            raise FieldError("modulus must be monic of degree N0")
        modulus = tuple(c % p for c in modulus)
        if not _is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.N0 = N0
        self.q = p ** N0
        if self.q > MAX_TABLE_ORDER:
            raise FieldError(f"field of order {self.q} is too large")
        self.modulus = modulus
        q = self.q
        self._coords = [tuple((v // p ** i) % p for i in range(N0)) for v in range(q)]
        self._add = [[self._encode(tuple((a + b) % p for a, b in zip(self._coords[x], self._coords[y])))
                      for y in range(q)] for x in range(q)]
        self._neg = [self._encode(tuple((-a) % p for a in self._coords[x])) for x in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(x, q):
                v = self._encode(tuple(_poly_mulmod(self._coords[x], self._coords[y], modulus, p)))
                self._mul[x][y] = v
                self._mul[y][x] = v
        self._inv = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self._mul[x][y] == 1:
                    self._inv[x] = y
                    break
        self._frob1 = [self._power(x, p) for x in range(q)]
        self._frob = [list(range(q))]
        for _ in range(1, N0):
            prev = self._frob[-1]
            self._frob.append([self._frob1[v] for v in prev])
        self._trace = []
        for x in range(q):
            acc = 0
            for n in range(N0):
                acc = self._add[acc][self._frob[n][x]]
            self._trace.append(acc)
        self.alpha0 = self._choose_alpha0()

    def _encode(self, coords):
        v = 0
        for i, c in enumerate(coords):
            v += (c % self.p) * self.p ** i
        return v

    def _power(self, x, e):
        r = 1
        for _ in range(e):
            r = self._mul[r][x]
        return r

    def _choose_alpha0(self):
        basis = [self.p ** i for i in range(self.N0)]
        for b in basis:
            if self._trace[b] == 1:
                return b
        for b in basis:
            t = self._trace[b]
            if t:
                return self._mul[self._inv[t]][b]
        raise FieldError("trace vanishes identically")  # impossible for a finite field

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.N0, self.modulus) == (other.p, other.N0, other.modulus)

    def __hash__(self):
        return hash((self.p, self.N0, self.modulus))

    def __repr__(self):
        return f"GF({self.p}, {self.N0}, modulus={self.modulus})"

    # raw integer arithmetic

    def add(self, x, y):
        return self._add[x][y]

    def sub(self, x, y):
        return self._add[x][self._neg[y]]

    def neg(self, x):
        return self._neg[x]

    def mul(self, x, y):
        return self._mul[x][y]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[x]

    def frob(self, x, n=1):
        return self._frob[n % self.N0][x]

    def trace(self, x):
        return self._trace[x]

    def from_int(self, k):
        """Image of the integer k under Z -> F_p -> F_q."""
        return k % self.p

    def from_fraction(self, num, den):
        return self._mul[num % self.p][self._inv[den % self.p]]

    def coords(self, x):
        return self._coords[x]

    def from_coords(self, coords):
        if len(coords) != self.N0:
            raise FieldError("wrong number of coordinates")
        return self._encode(coords)

    def is_prime_field_value(self, x):
        return x < self.p

    def elements(self):
        return range(self.q)

    def elem(self, v):
        return GFElem(self, v)

    def gen(self):
        """The class of the polynomial variable g."""
        return GFElem(self, self.p % self.q)

    def format(self, x):
        if self.N0 == 1:
            return str(x)
        parts = []
        for i, c in enumerate(self._coords[x]):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                if not mono:
                    parts.append(str(c))
                else:
                    parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(reversed(parts)) if parts else "0"


@lru_cache(maxsize=None)
def get_field(p, N0=1, modulus=None):
    return GF(p, N0, modulus)


@dataclass(frozen=True)
class GFElem:
    field: GF
    value: int

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if not isinstance(other, GFElem) or other.field != self.field:
            raise FieldError("field parameters differ")
        return other.value

    def __add__(self, other):
        return GFElem(self.field, self.field.add(self.value, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return GFElem(self.field, self.field.sub(self.value, self._check(other)))

    def __rsub__(self, other):
        return GFElem(self.field, self.field.sub(self._check(other), self.value))

    def __neg__(self):
        return GFElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return GFElem(self.field, self.field.mul(self.value, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GFElem(self.field, self.field.mul(self.value, self.field.inv(self._check(other))))

    def __pow__(self, e):
        if e < 0:
            return GFElem(self.field, self.field.inv(self.value)) ** (-e)
        r = 1
        for _ in range(e):
            r = self.field.mul(r, self.value)
        return GFElem(self.field, r)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, GFElem) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"GFElem({self.field.format(self.value)} in F_{self.field.q})"

    @property
    def coordinates(self):
        return self.field.coords(self.value)

    def frobenius(self, n=1):
        return GFElem(self.field, self.field.frob(self.value, n))

    def trace(self):
        return GFElem(self.field, self.field.trace(self.value))

    def inverse(self):
        return GFElem(self.field, self.field.inv(self.value))


def gf_mul(x, y):
    if x.field != y.field:
        raise FieldError("field parameters differ")
    return x * y


def frobenius(x, n=1):
    """x ** (p ** n); n is reduced mod N0 so negative n gives inverse powers."""
    return x.frobenius(n)


def trace(x):
    return x.trace()


def trace_and_alpha0(field):
    """The fixed element of absolute trace 1.

    The basis monomials 1, g, g**2, ... are scanned first; if none has trace
    exactly 1, the first one with nonzero trace is rescaled.
    """
    return GFElem(field, field.alpha0)


# exponent vectors: plain tuples, lexicographic order is Python's tuple order

def zero_index(N):
    return (0,) * N


def madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def msub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mneg(a):
    return tuple(-x for x in a)


def mscale(k, a):
    return tuple(k * x for x in a)


def lex_sign(a):
    for x in a:
        if x:
            return 1 if x > 0 else -1
    return 0


def is_lex_positive(a):
    return lex_sign(a) > 0


def is_prime_to_p(a, p):
    return any(x % p for x in a)


def index_in_Zplus(a, p):
    """True iff a is lex-positive and not every component is divisible by p."""
    return is_lex_positive(a) and is_prime_to_p(a, p)


def split_p_power(a, p):
    """Write a nonzero a as a1 * p**m with a1 prime to p."""
    if not any(a):
        raise ValueError("zero index has no p-adic splitting")
    m = 0
    while not is_prime_to_p(a, p):
        a = tuple(x // p for x in a)
        m += 1
    return a, m


def divisible_by(a, d):
    return all(x % d == 0 for x in a)


def mdiv(a, d):
    if not divisible_by(a, d):
        raise ValueError(f"{a} is not divisible by {d}")
    return tuple(x // d for x in a)
