"""Exact ground fields: prime fields, the rationals, and simple extensions.

Elements are plain Python values so they hash and compare cheaply:

* ``GF(p)``   -- ``int`` in ``range(p)``
* ``QQ``      -- ``fractions.Fraction``
* extensions  -- ``tuple`` of base-field elements of length ``deg(minpoly)``
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

DEFAULT_PRIME = 10007


class ZeroDivisor(ArithmeticError):
    """Inversion hit a zero divisor of ``K[a]/(m)``; ``factor`` is a proper factor of ``m``."""

    def __init__(self, factor, field):
        super().__init__(f"zero divisor in {field}: minpoly has factor {factor}")
        self.factor = factor
        self.field = field


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """Common interface. Subclasses implement the arithmetic primitives."""

    characteristic: int = 0
    is_prime_field = False
    is_rational = False
    degree = 1

    def __repr__(self):
        return str(self)

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        raise NotImplementedError

    # derived operations
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def random_element(self, rng: random.Random, height: int = 50):
        raise NotImplementedError


class PrimeField(Field):
    is_prime_field = True

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def _key(self):
        return ("GF", self.p)

    def __str__(self):
        return f"GF({self.p})"

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in " + str(self))
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, n):
        return pow(a, n, self.p) if n >= 0 else pow(self.inv(a), -n, self.p)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def random_element(self, rng, height=None):
        return rng.randrange(self.p)

    def to_str(self, a):
        # symmetric representative reads better in printed polynomials
        return str(a - self.p) if a > self.p // 2 else str(a)

    def parse(self, s: str):
        return self.convert(Fraction(s))

    def sqrt(self, a):
        """A square root in the field, or None."""
        a %= self.p
        if a == 0:
            return 0
        if self.p == 2:
            return a
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        return _tonelli(a, self.p)


def _tonelli(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class RationalField(Field):
    is_rational = True

    def __init__(self):
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def _key(self):
        return ("QQ",)

    def __str__(self):
        return "QQ"

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        return a / b

    def pow(self, a, n):
        return a ** n

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def random_element(self, rng, height=50):
        return Fraction(rng.randint(-height, height))

    def to_str(self, a):
        return str(a)

    def parse(self, s: str):
        return Fraction(s)

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)


def _isqrt_exact(n: int):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


class ExtensionField(Field):
    """``base[a]/(minpoly)`` with dynamic evaluation.

    ``minpoly`` is a list of base coefficients, constant term first, monic.
    Irreducibility is never certified: inverting a zero divisor raises
    :class:`ZeroDivisor` carrying a proper factor of the modulus.
    """

    def __init__(self, base: Field, minpoly: Sequence, symbol: str = "a"):
        mp = [base.convert(c) if hasattr(base, "convert") else c for c in minpoly]
        while mp and base.is_zero(mp[-1]):
            mp.pop()
        if len(mp) < 3:
            raise ValueError("extension minpoly must have degree >= 2")
        if not base.is_one(mp[-1]):
            raise ValueError("extension minpoly must be monic")
        self.base = base
        self.minpoly = tuple(mp)
        self.symbol = symbol
        self.degree = len(mp) - 1
        self.characteristic = base.characteristic
        self.zero = tuple([base.zero] * self.degree)
        self.one = tuple([base.one] + [base.zero] * (self.degree - 1))

    def _key(self):
        return ("EXT", self.base._key(), self.minpoly, self.symbol)

    def __str__(self):
        return f"{self.base}[{self.symbol}]/({_upoly_str(self.base, self.minpoly, self.symbol)})"

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise ValueError("wrong element length")
            return x
        return tuple([self.base.convert(x)] + [self.base.zero] * (self.degree - 1))

    def embed(self, x):
        """Image of a base-field element."""
        return tuple([x] + [self.base.zero] * (self.degree - 1))

    def gen(self):
        if self.degree < 2:
            raise ValueError
        return tuple([self.base.zero, self.base.one] + [self.base.zero] * (self.degree - 2))

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        n = self.degree
        prod = [B.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not B.is_zero(y):
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        m = self.minpoly
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if B.is_zero(c):
                continue
            for i in range(n):
                prod[k - n + i] = B.sub(prod[k - n + i], B.mul(c, m[i]))
        return tuple(prod[:n])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        B = self.base
        # extended Euclid on (minpoly, a); a nonconstant gcd is a zero-divisor witness
        g, s = _upoly_xgcd(B, list(self.minpoly), _trim(B, list(a)))
        if len(g) > 1:
            raise ZeroDivisor(tuple(g), self)
        c = B.inv(g[0])
        s = [B.mul(c, x) for x in s]
        s += [B.zero] * (self.degree - len(s))
        return tuple(s[: self.degree])

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def is_one(self, a):
        return a == self.one

    def random_element(self, rng, height=50):
        return tuple(self.base.random_element(rng, height) for _ in range(self.degree))

    def to_str(self, a):
        return "(" + _upoly_str(self.base, a, self.symbol) + ")"

    def parse(self, s: str):
        return self.convert(self.base.parse(s))

    def sqrt(self, a):
        return None


# -- tiny univariate helpers used by the extension arithmetic --------------

def _trim(B, f):
    while f and B.is_zero(f[-1]):
        f.pop()
    return f


def _upoly_divmod(B, f, g):
    f = list(f)
    q = [B.zero] * max(len(f) - len(g) + 1, 1)
    lc = B.inv(g[-1])
    while len(f) >= len(g) and f:
        c = B.mul(f[-1], lc)
        k = len(f) - len(g)
        q[k] = c
        for i, gi in enumerate(g):
            f[k + i] = B.sub(f[k + i], B.mul(c, gi))
        f.pop()
        _trim(B, f)
    return _trim(B, q), f


def _upoly_mul(B, f, g):
    if not f or not g:
        return []
    out = [B.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = B.add(out[i + j], B.mul(x, y))
    return _trim(B, out)


def _upoly_sub(B, f, g):
    n = max(len(f), len(g))
    out = [B.sub(f[i] if i < len(f) else B.zero, g[i] if i < len(g) else B.zero) for i in range(n)]
    return _trim(B, out)


def _upoly_xgcd(B, m, a):
    """Return (g, s) with g = gcd(m, a) and s*a = g mod m."""
    r0, r1 = _trim(B, list(m)), _trim(B, list(a))
    s0, s1 = [], [B.one]
    while r1:
        q, r = _upoly_divmod(B, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_sub(B, s0, _upoly_mul(B, q, s1))
    lc = B.inv(r0[-1])
    g = [B.mul(lc, x) for x in r0]
    s = [B.mul(lc, x) for x in s0]
    _, s = _upoly_divmod(B, s, m) if len(s) >= len(m) else (None, s)
    return g, s


def _upoly_str(B, coeffs, sym):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if B.is_zero(c):
            continue
        cs = B.to_str(c)
        if i == 0:
            terms.append(cs)
        else:
            mon = sym if i == 1 else f"{sym}^{i}"
            terms.append(mon if cs == "1" else f"-{mon}" if cs == "-1" else f"{cs}*{mon}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def parse_field(text: str) -> Field:
    """``'GF 10007'``, ``'GF(10007)'`` or ``'QQ'``."""
    t = text.strip().replace("(", " ").replace(")", " ").split()
    if not t:
        raise ValueError("empty field description")
    if t[0].upper() == "QQ":
        return QQ
    if t[0].upper() in ("GF", "FP", "ZZ/"):
        return GF(int(t[1]) if len(t) > 1 else DEFAULT_PRIME)
    raise ValueError(f"unknown field description {text!r}")
