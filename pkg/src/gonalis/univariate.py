"""Dense univariate polynomials over a field: lists of coefficients, constant first."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

import flint

from .fields import Field

UPoly = List


def trim(F: Field, f) -> list:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    return trim(F, [F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)])


def sub(F, f, g):
    n = max(len(f), len(g))
    return trim(F, [F.sub(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)])


def scale(F, f, c):
    return trim(F, [F.mul(c, x) for x in f])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if F.is_zero(x):
            continue
        for j, y in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def power(F, f, n):
    out = [F.one]
    for _ in range(n):
        out = mul(F, out, f)
    return out


def divmod_(F, f, g):
    g = trim(F, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = trim(F, f)
    if len(f) < len(g):
        return [], f
    q = [F.zero] * (len(f) - len(g) + 1)
    lc = F.inv(g[-1])
    f = list(f)
    for k in range(len(f) - len(g), -1, -1):
        c = F.mul(f[k + len(g) - 1], lc)
        q[k] = c
        if not F.is_zero(c):
            for i, gi in enumerate(g):
                f[k + i] = F.sub(f[k + i], F.mul(c, gi))
    return trim(F, q), trim(F, f[:len(g) - 1])


def monic(F, f):
    f = trim(F, f)
    if not f:
        return f
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g):
    a, b = trim(F, f), trim(F, g)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def derivative(F, f):
    return trim(F, [F.mul(F.convert(i), f[i]) for i in range(1, len(f))])


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def compose(F, f, g):
    """f(g(t))."""
    acc = []
    for c in reversed(f):
        acc = add(F, mul(F, acc, g), [c] if not F.is_zero(c) else [])
    return acc


def interpolate(F, xs, ys):
    n = len(xs)
    result = []
    for i in range(n):
        num = [F.one]
        den = F.one
        for j in range(n):
            if i != j:
                num = mul(F, num, [F.neg(xs[j]), F.one])
                den = F.mul(den, F.sub(xs[i], xs[j]))
        result = add(F, result, scale(F, num, F.div(ys[i], den)))
    return result


def is_squarefree(F, f) -> bool:
    f = trim(F, f)
    if len(f) <= 2:
        return True
    d = derivative(F, f)
    if not d:
        return False
    return len(gcd(F, f, d)) == 1


def roots(F, f) -> list:
    """Distinct roots lying in the field itself (prime fields and QQ)."""
    f = trim(F, f)
    if len(f) <= 1:
        return []
    if F.is_prime_field:
        return sorted(int(r) for r, _ in flint.nmod_poly([int(c) for c in f], F.p).roots())
    if F.is_rational:
        fp = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in f])
        return sorted(Fraction(int(r.p), int(r.q)) for r, _ in fp.roots())
    # extensions: search over base-field embeddings only
    out = []
    for r in roots(F.base, [c[0] for c in f]) if all(all(F.base.is_zero(x) for x in c[1:]) for c in f) else []:
        out.append(F.convert(r))
    return out


def factor_degrees(F, f) -> list:
    """Degrees of the irreducible factors (with multiplicity) over a prime field or QQ."""
    f = trim(F, f)
    if F.is_prime_field:
        _, fac = flint.nmod_poly([int(c) for c in f], F.p).factor()
    elif F.is_rational:
        _, fac = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in f]).factor()
    else:
        raise NotImplementedError("factorization over extension fields")
    return sorted(p.degree() for p, e in fac for _ in range(e))


def to_str(F, f, var="t") -> str:
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        cs = F.to_str(c)
        mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts).replace("+ -", "- ") or "0"
