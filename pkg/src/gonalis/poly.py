"""Sparse multivariate polynomials over an exact field, graded reverse lex order."""
from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Sequence, Tuple

from .fields import Field

Exp = Tuple[int, ...]


def grevlex_key(e: Exp):
    """Sort key: larger key means larger monomial (x0 > x1 > ... )."""
    return (sum(e),) + tuple(-x for x in reversed(e))


@lru_cache(maxsize=None)
def monomials(nvars: int, deg: int) -> Tuple[Exp, ...]:
    """All exponent vectors of total degree ``deg``, descending in grevlex."""
    if deg < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, deg: int) -> Dict[Exp, int]:
    return {e: i for i, e in enumerate(monomials(nvars, deg))}


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """``K[x0..x_{n-1}]``; the ring is a light context object shared by its polys."""

    def __init__(self, field: Field, nvars: int, names: Sequence[str] | None = None):
        self.field = field
        self.nvars = nvars
        self.names = list(names) if names is not None else [f"x{i}" for i in range(nvars)]
        if len(self.names) != nvars:
            raise ValueError("names/nvars mismatch")

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.nvars == other.nvars

    def __hash__(self):
        return hash((self.field, self.nvars))

    def __repr__(self):
        return f"PolyRing({self.field}, {self.names})"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(self.field.one)

    def const(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {} if self.field.is_zero(c) else {(0,) * self.nvars: c})

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> List["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e: Exp, c=None) -> "Poly":
        c = self.field.one if c is None else self.field.convert(c)
        return Poly(self, {} if self.field.is_zero(c) else {tuple(e): c})

    def linear_form(self, coeffs: Sequence) -> "Poly":
        F = self.field
        terms = {}
        for i, c in enumerate(coeffs):
            c = F.convert(c)
            if not F.is_zero(c):
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def from_vector(self, vec: Sequence, deg: int) -> "Poly":
        F = self.field
        mons = monomials(self.nvars, deg)
        return Poly(self, {mons[i]: c for i, c in enumerate(vec) if not F.is_zero(c)})

    def random_form(self, deg: int, rng, height: int = 50) -> "Poly":
        F = self.field
        return Poly(self, {e: c for e in monomials(self.nvars, deg)
                           if not F.is_zero(c := F.random_element(rng, height))})

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.nvars, self.names)

    def with_names(self, names) -> "PolyRing":
        return PolyRing(self.field, self.nvars, names)


class Poly:
    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: Dict[Exp, object]):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- structure ---------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def lead_exp(self) -> Exp:
        if self._lead is None:
            self._lead = max(self.terms, key=grevlex_key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def sorted_terms(self) -> List[Tuple[Exp, object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, e: Exp):
        return self.terms.get(tuple(e), self.field.zero)

    def to_vector(self, deg: int) -> list:
        F = self.field
        idx = monomial_index(self.ring.nvars, deg)
        v = [F.zero] * len(idx)
        for e, c in self.terms.items():
            if sum(e) != deg:
                raise ValueError("polynomial is not homogeneous of degree %d" % deg)
            v[idx[e]] = c
        return v

    def variables_used(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if self.ring.nvars != other.ring.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        self._check(other)
        F = self.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = F.add(t[e], c)
                if F.is_zero(s):
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        F = self.field
        c = F.convert(c)
        if F.is_zero(c):
            return Poly(self.ring, {})
        return Poly(self.ring, {e: F.mul(x, c) for e, x in self.terms.items()})

    def mul_term(self, e: Exp, c) -> "Poly":
        F = self.field
        if F.is_zero(c):
            return Poly(self.ring, {})
        return Poly(self.ring, {exp_add(m, e): F.mul(x, c) for m, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        F = self.field
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        t: Dict[Exp, object] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = F.mul(c1, c2)
                if e in t:
                    v = F.add(t[e], v)
                    if F.is_zero(v):
                        del t[e]
                        continue
                t[e] = v
        return Poly(self.ring, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self.is_zero() and other == 0:
                return True
            other = self.ring.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead_coeff()))

    # -- evaluation / substitution ------------------------------------------
    def evaluate(self, point: Sequence):
        F = self.field
        if len(point) != self.ring.nvars:
            raise ValueError("variable-count mismatch")
        acc = F.zero
        pows: Dict[Tuple[int, int], object] = {}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in pows:
                        pows[key] = F.pow(point[i], k)
                    v = F.mul(v, pows[key])
            acc = F.add(acc, v)
        return acc

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring map sending ``x_i`` to ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("variable-count mismatch")
        target = images[0].ring
        cache: Dict[Tuple[int, int], Poly] = {}
        acc = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            acc = acc + term
        return acc

    def change_ring(self, ring: PolyRing) -> "Poly":
        F = ring.field
        out = {}
        for e, c in self.terms.items():
            c2 = F.convert(c)
            if not F.is_zero(c2):
                out[e] = c2
        return Poly(ring, out)

    def derivative(self, i: int) -> "Poly":
        F = self.field
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = F.mul(c, F.convert(e[i]))
                if not F.is_zero(v):
                    ee = list(e)
                    ee[i] -= 1
                    t[tuple(ee)] = v
        return Poly(self.ring, t)

    # -- printing ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            cs = F.to_str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Recursive-descent parser for ``+ - * ^ **`` and parentheses over ``ring``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        tokens.append(("num", num) if num else ("name", name) if name else ("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    names = {n: i for i, n in enumerate(ring.names)}
    F = ring.field
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() in (("op", "*"), ("op", "/")) or peek()[0] in ("name", "num") or peek() == ("op", "("):
            if peek() == ("op", "/"):
                take()
                d = power()
                if d.degree() > 0:
                    raise ValueError("division by a nonconstant")
                acc = acc.scale(F.inv(d.coefficient((0,) * ring.nvars)))
                continue
            if peek() == ("op", "*"):
                take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(F.parse(val))
        if kind == "name":
            if val not in names:
                raise ValueError(f"unknown variable {val!r}")
            return ring.var(names[val])
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return e
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


def polys_to_matrix(polys: Iterable[Poly], deg: int) -> list:
    """Coefficient rows of homogeneous polys of degree ``deg``."""
    return [p.to_vector(deg) for p in polys]
