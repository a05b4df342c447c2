"""Inverting maps of degree at most four by radicals, and validating the result."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, univariate
from .curvein import HyperellipticModel, PlaneModel
from .fields import ExtensionField, Field, ZeroDivisor
from .poly import Poly, PolyRing


class PrimitiveElementRetry(RuntimeError):
    """No primitive coordinate found along the fibers."""


class CharacteristicUnsupported(ValueError):
    """Radical formulas need characteristic different from 2 and 3."""


class DegreeTooHigh(ValueError):
    """Only degrees up to four are solvable by the fixed formulas."""


class ValidationFailed(AssertionError):
    """No branch assignment makes the parametrization vanish at some sample."""


class UnsupportedMap(ValueError):
    """Only pencils of lines through a point of the plane model are inverted."""


# -- expression trees ---------------------------------------------------------------------------

@dataclass(eq=False)
class RadicalExpression:
    """Node of an expression DAG; root nodes are shared so a branch choice is global."""

    op: str                              # const | param | add | sub | mul | div | neg | root
    args: Tuple["RadicalExpression", ...] = ()
    value: object = None
    k: int = 0

    def __add__(self, other):
        return _binary("add", self, other)

    def __sub__(self, other):
        return _binary("sub", self, other)

    def __mul__(self, other):
        return _binary("mul", self, other)

    def __truediv__(self, other):
        return _binary("div", self, other)

    def __neg__(self):
        if self.op == "const":
            return const(-self.value)
        return RadicalExpression("neg", (self,))

    def roots(self) -> List["RadicalExpression"]:
        """Root nodes in dependency order (inner radicals first)."""
        seen: Dict[int, RadicalExpression] = {}
        order: List[RadicalExpression] = []

        def walk(e):
            if id(e) in seen:
                return
            seen[id(e)] = e
            for a in e.args:
                walk(a)
            if e.op == "root":
                order.append(e)

        walk(self)
        return order

    def is_const(self, v=None) -> bool:
        return self.op == "const" and (v is None or self.value == v)


def const(c) -> RadicalExpression:
    return RadicalExpression("const", value=c)


def param() -> RadicalExpression:
    return RadicalExpression("param")


def root(k: int, arg: RadicalExpression) -> RadicalExpression:
    if k not in (2, 3):
        raise DegreeTooHigh("only square and cube roots are used")
    return RadicalExpression("root", (arg,), k=k)


def _binary(op, a, b):
    if not isinstance(b, RadicalExpression):
        b = const(b)
    if not isinstance(a, RadicalExpression):
        a = const(a)
    if op == "add":
        if a.is_const(0):
            return b
        if b.is_const(0):
            return a
    if op == "sub" and b.is_const(0):
        return a
    if op == "mul":
        if a.is_const(1):
            return b
        if b.is_const(1):
            return a
        if a.is_const(0) or b.is_const(0):
            return const(0)
    if op == "div" and b.is_const(1):
        return a
    return RadicalExpression(op, (a, b))


def poly_expr(coeffs: Sequence, to_const) -> RadicalExpression:
    """Horner tree of a polynomial in the parameter (constant term first)."""
    t = param()
    out = const(0)
    for c in reversed(list(coeffs)):
        out = out * t + const(to_const(c))
    return out


# -- serialization ------------------------------------------------------------------------------

def _const_str(v) -> str:
    return str(v)


def to_json(expr: RadicalExpression, names: Dict[int, str]) -> dict:
    if expr.op == "const":
        return {"op": "const", "value": _const_str(expr.value)}
    if expr.op == "param":
        return {"op": "t"}
    if expr.op == "root":
        return {"op": "ref", "id": names[id(expr)]}
    return {"op": expr.op, "args": [to_json(a, names) for a in expr.args]}


def tower_json(exprs: Sequence[RadicalExpression]) -> Tuple[Dict[int, str], List[dict]]:
    names: Dict[int, str] = {}
    tower: List[dict] = []
    for e in exprs:
        for r in e.roots():
            if id(r) in names:
                continue
            names[id(r)] = f"r{len(names)}"
            tower.append({"id": names[id(r)], "k": r.k, "arg": to_json(r.args[0], names)})
    return names, tower


# -- solving --------------------------------------------------------------------------------------

def _cardano(a: RadicalExpression, b: RadicalExpression, c: RadicalExpression, cube_free: bool = False) -> RadicalExpression:
    """A root of ``z^3 + a z^2 + b z + c``: depress, then ``w = C - P/(3C)`` with ``C^3 = -Q/2 + sqrt(Q^2/4 + P^3/27)``."""
    shift = a / const(Fraction(3))
    P = b - a * a / const(Fraction(3))
    Q = const(Fraction(2, 27)) * a * a * a - a * b / const(Fraction(3)) + c
    if cube_free:
        w = root(3, -Q)
    else:
        S = root(2, Q * Q / const(Fraction(4)) + P * P * P / const(Fraction(27)))
        Cc = root(3, -Q / const(Fraction(2)) + S)
        w = Cc - P / (const(Fraction(3)) * Cc)
    return w - shift


def solve_by_radicals(coeffs: Sequence[RadicalExpression], characteristic: int = 0,
                      zero_flags: Optional[Dict[str, bool]] = None) -> RadicalExpression:
    """A root ``u`` of the monic ``u^d + c_{d-1} u^{d-1} + ... + c_0`` (``coeffs = [c_0, ..., c_{d-1}]``).

    ``zero_flags`` marks coefficients known to vanish identically (``"cubic_p"``,
    ``"quartic_q"``) so the degenerate layouts are used.
    """
    if characteristic in (2, 3):
        raise CharacteristicUnsupported(f"characteristic {characteristic}")
    d = len(coeffs)
    flags = zero_flags or {}
    if d > 4:
        raise DegreeTooHigh(f"degree {d}")
    if d == 1:
        return -coeffs[0]
    if d == 2:
        b, c = coeffs[1], coeffs[0]
        return (-b + root(2, b * b - const(Fraction(4)) * c)) / const(Fraction(2))
    if d == 3:
        return _cardano(coeffs[2], coeffs[1], coeffs[0], flags.get("cubic_p", False))
    a3, a2, a1, a0 = coeffs[3], coeffs[2], coeffs[1], coeffs[0]
    shift = a3 / const(Fraction(4))
    # depressed quartic y^4 + p y^2 + q y + r with u = y - a3/4
    p = a2 - const(Fraction(3, 8)) * a3 * a3
    q = a1 - a3 * a2 / const(Fraction(2)) + a3 * a3 * a3 / const(Fraction(8))
    r = (a0 - a3 * a1 / const(Fraction(4)) + a3 * a3 * a2 / const(Fraction(16))
         - const(Fraction(3, 256)) * a3 * a3 * a3 * a3)
    if flags.get("quartic_q", False):
        inner = root(2, p * p - const(Fraction(4)) * r)
        y = root(2, (-p + inner) / const(Fraction(2)))
        return y - shift
    # resolvent z^3 - p z^2 - 4 r z + (4 p r - q^2)
    z = _cardano(-p, const(Fraction(-4)) * r, const(Fraction(4)) * p * r - q * q)
    s = root(2, z - p)
    y = (s + root(2, s * s - const(Fraction(2)) * z - const(Fraction(2)) * q / s)) / const(Fraction(2))
    return y - shift


# -- fiber polynomial ------------------------------------------------------------------------------

@dataclass
class FiberPolynomial:
    """``P(t, u)`` with coefficients ``num_k(t) / lead(t)``; plane point ``u*c + t*a + b``."""

    field: Field
    coeffs: List[list]                  # polynomial coefficients in t of u^k, k = 0..d
    center: tuple
    a: tuple
    b: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def monic_exprs(self, to_const) -> List[RadicalExpression]:
        lead = poly_expr(self.coeffs[-1], to_const)
        return [poly_expr(c, to_const) / lead for c in self.coeffs[:-1]]

    def coefficient_is_zero(self, k: int) -> bool:
        return not univariate.trim(self.field, self.coeffs[k])


def _point_off(F: Field, vecs: List[list], avoid: Sequence) -> list:
    for v in vecs:
        if linalg.rank([list(avoid), v], F, 3) == 2:
            return v
    s = [F.add(x, y) for x, y in zip(vecs[0], vecs[1])]
    return s


def fiber_minpoly(P, num: Poly, den: Poly, seed: int = 0) -> FiberPolynomial:
    """Fiber polynomial of the pencil ``num/den`` of lines through a point of the plane model."""
    if isinstance(P, HyperellipticModel):
        F = P.field
        coeffs = [[F.zero] * len(P.f) for _ in range(3)]
        coeffs[0] = [F.neg(c) for c in P.f]
        coeffs[2] = [F.one]
        coeffs[1] = [F.zero]
        return FiberPolynomial(F, coeffs, (F.zero, F.one, F.zero), (F.one, F.zero, F.zero), (F.zero, F.zero, F.one))
    R = P.ring
    F = R.field
    if F.characteristic in (2, 3):
        raise CharacteristicUnsupported(f"characteristic {F.characteristic}")
    if num.degree() != 1 or den.degree() != 1:
        raise UnsupportedMap("only pencils of lines are inverted")
    nv, dv = linear_coefficients3(num), linear_coefficients3(den)
    center = linalg.nullspace([nv, dv], F, 3)
    if len(center) != 1:
        raise UnsupportedMap("numerator and denominator must be independent lines")
    c = center[0]
    a = _point_off(F, linalg.nullspace([dv], F, 3), c)
    b = _point_off(F, linalg.nullspace([nv], F, 3), c)
    na = F.sum(F.mul(x, y) for x, y in zip(nv, a))
    db = F.sum(F.mul(x, y) for x, y in zip(dv, b))
    a = [F.div(x, na) for x in a]
    b = [F.div(x, db) for x in b]
    UT = PolyRing(F, 2, ["u", "t"])
    u, t = UT.gens()
    images = [u.scale(c[i]) + t.scale(a[i]) + UT.const(b[i]) for i in range(3)]
    G = P.F.substitute(images)
    deg = max(e[0] for e in G.terms)
    coeffs = [[F.zero] * (P.degree + 1) for _ in range(deg + 1)]
    for e, v in G.terms.items():
        coeffs[e[0]][e[1]] = F.add(coeffs[e[0]][e[1]], v)
    coeffs = [univariate.trim(F, cf) for cf in coeffs]
    if deg > 4:
        raise DegreeTooHigh(f"fibers have degree {deg}")
    return FiberPolynomial(F, coeffs, tuple(c), tuple(a), tuple(b))


def linear_coefficients3(p: Poly) -> list:
    F = p.ring.field
    return [p.coefficient(tuple(1 if k == i else 0 for k in range(3))) for i in range(3)]


# -- parametrization -------------------------------------------------------------------------------

@dataclass
class RadicalParametrization:
    x: RadicalExpression
    y: RadicalExpression
    u: RadicalExpression
    field: Field
    degree: int
    fiber: Optional[FiberPolynomial] = None

    def tower(self) -> List[dict]:
        return tower_json([self.x, self.y])[1]

    def to_json(self) -> dict:
        names, tower = tower_json([self.x, self.y])
        return {"x": to_json(self.x, names), "y": to_json(self.y, names), "tower": tower,
                "degree": self.degree}


def _to_const(F: Field):
    if F.is_rational:
        return lambda c: Fraction(c)
    return lambda c: c


def radical_parametrization(P, num: Poly, den: Poly, seed: int = 0) -> RadicalParametrization:
    fib = fiber_minpoly(P, num, den, seed)
    F = fib.field
    tc = _to_const(F)
    exprs = fib.monic_exprs(tc)
    flags = {}
    if fib.degree == 3:
        flags["cubic_p"] = _depressed_is_zero(fib, "p")
    if fib.degree == 4:
        flags["quartic_q"] = _depressed_is_zero(fib, "q")
    u = solve_by_radicals(exprs, F.characteristic, flags)
    t = param()
    if isinstance(P, HyperellipticModel):
        return RadicalParametrization(t, u, u, F, fib.degree, fib)
    c, a, b = fib.center, fib.a, fib.b
    coords = [u * const(tc(c[i])) + t * const(tc(a[i])) + const(tc(b[i])) for i in range(3)]
    return RadicalParametrization(coords[0] / coords[2], coords[1] / coords[2], u, F, fib.degree, fib)


def _depressed_is_zero(fib: FiberPolynomial, which: str) -> bool:
    """Decide identically vanishing depressed coefficients by exact evaluation at several parameters."""
    F = fib.field
    rng = random.Random(1)
    for _ in range(6):
        tv = F.convert(rng.randint(1, 10 ** 6))
        vals = [univariate.evaluate(F, c, tv) for c in fib.coeffs]
        lead = vals[-1]
        if F.is_zero(lead):
            continue
        m = [F.div(v, lead) for v in vals]
        if fib.degree == 3 and which == "p":
            a, bb = m[2], m[1]
            val = F.sub(bb, F.div(F.mul(a, a), F.convert(3)))
        else:
            a3, a2, a1 = m[3], m[2], m[1]
            val = F.add(F.sub(a1, F.div(F.mul(a3, a2), F.convert(2))),
                        F.div(F.mul(F.mul(a3, a3), a3), F.convert(8)))
        if not F.is_zero(val):
            return False
    return True


# -- evaluation ----------------------------------------------------------------------------------

def _eval_exact(expr: RadicalExpression, F: Field, t, choose_root, memo) -> object:
    key = id(expr)
    if key in memo:
        return memo[key]
    op = expr.op
    if op == "const":
        v = F.convert(expr.value)
    elif op == "param":
        v = t
    elif op == "root":
        v = choose_root(expr, _eval_exact(expr.args[0], F, t, choose_root, memo))
    else:
        vals = [_eval_exact(a, F, t, choose_root, memo) for a in expr.args]
        if op == "add":
            v = F.add(*vals)
        elif op == "sub":
            v = F.sub(*vals)
        elif op == "mul":
            v = F.mul(*vals)
        elif op == "div":
            v = F.div(*vals)
        elif op == "neg":
            v = F.neg(vals[0])
        else:
            raise ValueError(op)
    memo[key] = v
    return v


def _eval_ball(expr: RadicalExpression, t, branches: Dict[int, int], memo, acb):
    key = id(expr)
    if key in memo:
        return memo[key]
    op = expr.op
    if op == "const":
        c = expr.value
        v = acb(c.numerator) / c.denominator if isinstance(c, Fraction) else acb(int(c))
    elif op == "param":
        v = t
    elif op == "root":
        arg = _eval_ball(expr.args[0], t, branches, memo, acb)
        k = expr.k
        # radicands near the negative axis straddle the principal cut; rotate them away
        turn = 2 * branches[key]
        if arg.real < 0:
            arg, turn = -arg, turn + 1
        v = arg.root(k) * (acb(turn) / k).exp_pi_i() if turn else arg.root(k)
    else:
        vals = [_eval_ball(a, t, branches, memo, acb) for a in expr.args]
        if op == "add":
            v = vals[0] + vals[1]
        elif op == "sub":
            v = vals[0] - vals[1]
        elif op == "mul":
            v = vals[0] * vals[1]
        elif op == "div":
            v = vals[0] / vals[1]
        else:
            v = -vals[0]
    memo[key] = v
    return v


def _plane_residual(P, x, y, acb):
    if isinstance(P, HyperellipticModel):
        val = y * y
        for i, c in enumerate(P.f):
            c = Fraction(c)
            val -= acb(c.numerator) / c.denominator * x ** i
        return val
    val = acb(0)
    for e, c in P.F.terms.items():
        c = Fraction(c)
        val += acb(c.numerator) / c.denominator * x ** e[0] * y ** e[1]
    return val


def validate(P, R: RadicalParametrization, samples: int = 20, precision: int = 64, seed: int = 0) -> dict:
    """Largest accepted residual over seeded samples; some branch assignment must pass at each one."""
    F = R.field
    if F.is_rational:
        return _validate_ball(P, R, samples, precision, seed)
    return _validate_exact(P, R, samples, seed)


def _validate_ball(P, R, samples, precision, seed) -> dict:
    import flint
    acb = flint.acb
    roots = R.x.roots()
    for r in R.y.roots():
        if r not in roots:
            roots.append(r)
    rng = random.Random(seed)
    tol_exp = -(precision // 2)
    worst = None
    old = flint.ctx.dps
    try:
        for _ in range(samples):
            tq = Fraction(rng.randint(-10 ** 3, 10 ** 3), rng.randint(1, 10 ** 3))
            best = None
            dps = precision
            while best is None and dps <= 8 * precision:
                flint.ctx.dps = dps
                t = acb(tq.numerator) / tq.denominator
                inconclusive = False
                for choice in itertools.product(*[range(r.k) for r in roots]):
                    branches = {id(r): b for r, b in zip(roots, choice)}
                    memo: dict = {}
                    try:
                        x = _eval_ball(R.x, t, branches, memo, acb)
                        y = _eval_ball(R.y, t, branches, memo, acb)
                    except ZeroDivisionError:
                        continue
                    if not (x.is_finite() and y.is_finite()):
                        continue
                    res = abs(_plane_residual(P, x, y, acb))
                    upper = res.mid() + res.rad()
                    if upper < flint.arb(10) ** tol_exp:
                        best = upper if best is None else min(best, upper)
                    elif res.mid() < flint.arb(10) ** tol_exp:
                        inconclusive = True
                if best is None and not inconclusive:
                    break
                dps *= 2
            if best is None:
                raise ValidationFailed(f"no branch vanishes at t = {tq}")
            worst = best if worst is None else max(worst, best)
    finally:
        flint.ctx.dps = old
    return {"samples": samples, "max_residual": _fmt_arb(worst), "precision": precision}


def _fmt_arb(x) -> str:
    if x is None:
        return "0"
    s = x.str(5, radius=False)
    return s.strip("[]")


def _all_roots(F: Field, a, k: int) -> list:
    if F.is_zero(a):
        return [F.zero]
    return univariate.roots(F, [F.neg(a)] + [F.zero] * (k - 1) + [F.one])


def _validate_exact(P, R, samples, seed) -> dict:
    """Exact check over a prime field at samples where every radicand has rational roots."""
    F = R.field
    roots = R.x.roots()
    for r in R.y.roots():
        if r not in roots:
            roots.append(r)
    rng = random.Random(seed)
    checked, tries = 0, 0
    while checked < samples and tries < 200 * samples:
        tries += 1
        t = F.convert(rng.randint(1, F.characteristic - 1))
        ok = _exact_sample(P, R, F, t, roots)
        if ok is None:
            continue
        if not ok:
            raise ValidationFailed(f"no branch vanishes at t = {t}")
        checked += 1
    return {"samples": checked, "max_residual": "0", "exact": True}


def _exact_sample(P, R, F, t, roots):
    """True/False when decidable at ``t``; None when some radicand has no root in the field."""

    def search(assign):
        memo = {}
        pending = []

        def choose(node, arg):
            if id(node) in assign:
                return assign[id(node)]
            pending.append((node, arg))
            raise _NeedRoot()

        try:
            x = _eval_exact(R.x, F, t, choose, memo)
            y = _eval_exact(R.y, F, t, choose, memo)
        except _NeedRoot:
            node, arg = pending[-1]
            cands = _all_roots(F, arg, node.k)
            if not cands:
                return None
            seen_false = False
            for c in cands:
                res = search({**assign, id(node): c})
                if res:
                    return True
                if res is False:
                    seen_false = True
            return False if seen_false else None
        except ZeroDivisionError:
            return False
        return F.is_zero(_plane_value(P, F, x, y))

    return search({})


class _NeedRoot(Exception):
    pass


def _plane_value(P, F, x, y):
    if isinstance(P, HyperellipticModel):
        return F.sub(F.mul(y, y), univariate.evaluate(F, list(P.f), x))
    return P.F.evaluate([x, y, F.one])


def _lift(v, src: Field, dst: Field):
    chain = []
    cur = dst
    while cur is not src:
        chain.append(cur)
        cur = cur.base
    for E in reversed(chain):
        v = E.embed(v)
    return v


def exact_identity(coeffs: Sequence[list], u: RadicalExpression, F: Field, t) -> bool:
    """Evaluate ``P(u)`` at parameter ``t`` in a formal tower where each root is a generator; True if zero.

    Radicands that are perfect powers surface as zero divisors; the offending level
    is then rebuilt from the reported factor (dynamic evaluation).
    """
    order: List[RadicalExpression] = []
    splits: Dict[int, list] = {}
    tv = F.convert(t)
    for _ in range(64):
        tower: List[Field] = [F]
        known: Dict[int, object] = {}
        levels: Dict[int, Field] = {}
        pending: List[tuple] = []

        def chooser(node, arg):
            if id(node) in known:
                return known[id(node)]
            pending.append((node, arg))
            raise _NeedRoot()

        try:
            for node in order:
                K = tower[-1]
                arg = _eval_exact(node.args[0], K, _lift(tv, F, K), chooser, {})
                mp = splits.get(id(node)) or [K.neg(arg)] + [K.zero] * (node.k - 1) + [K.one]
                if len(mp) == 2:
                    known[id(node)] = K.neg(mp[0])
                    continue
                E = ExtensionField(K, mp, f"r{len(tower)}")
                levels[id(node)] = E
                tower.append(E)
                for key in known:
                    known[key] = E.embed(known[key])
                known[id(node)] = E.gen()
            K = tower[-1]
            uval = _eval_exact(u, K, _lift(tv, F, K), chooser, {})
            acc = K.zero
            for k in range(len(coeffs) - 1, -1, -1):
                ck = _lift(univariate.evaluate(F, coeffs[k], tv), F, K)
                acc = K.add(K.mul(acc, uval), ck)
            return K.is_zero(acc)
        except _NeedRoot:
            order.append(pending[-1][0])
        except ZeroDivisor as exc:
            node = next(n for n in order if id(n) in levels and levels[id(n)] == exc.field)
            base = exc.field.base
            factor = univariate.monic(base, list(exc.factor))
            splits[id(node)] = factor
    raise RuntimeError("tower construction did not settle")


# -- driver ------------------------------------------------------------------------------------

class NotApplicable(ValueError):
    """The input falls outside what can be inverted by radicals here; ``tag`` names the reason."""

    def __init__(self, msg: str, tag: str, bounds: Optional[list] = None):
        super().__init__(msg)
        self.tag = tag
        self.bounds = bounds


def pencil_center(P: PlaneModel, seed: int = 0) -> Tuple[tuple, int]:
    """The worst singular point, or a smooth rational point when the model is smooth."""
    from .scrollar import EmptyLocus, curve_point
    if P.singularities:
        s = max(P.singularities, key=lambda s: s.multiplicity)
        return tuple(s.point), s.multiplicity
    try:
        return curve_point(P, seed), 1
    except EmptyLocus:
        raise NotApplicable("no rational point to project from", "no_rational_point") from None


def lines_through(ring: PolyRing, center: Sequence) -> Tuple[Poly, Poly]:
    F = ring.field
    basis = linalg.nullspace([list(center)], F, 3)
    return ring.linear_form(basis[0]), ring.linear_form(basis[1])


def radparam(model, seed: int = 0, samples: int = 20, precision: int = 64) -> dict:
    """Gonality check, a degree <= 4 pencil of lines, its radical inverse and a validation record."""
    from .curvein import CanonicalModel, delta_genus
    from .invariants import GonalityBounds, plane_gonality_bounds
    from .scrollar import PlaneQuintic, goneric_pipeline, gonal_map, strand_data
    if isinstance(model, HyperellipticModel):
        ring = PolyRing(model.field, 2, ["x", "z"])
        x, z = ring.gens()
        R = radical_parametrization(model, x, z, seed)
        out = {"gonality": 2, "map": {"num": "x", "den": "z"}}
    elif isinstance(model, CanonicalModel):
        data = strand_data(model)
        if model.genus == 6 and data.colength == 1:
            try:
                goneric_pipeline(model, seed, data)
            except PlaneQuintic:
                raise NotApplicable("smooth plane quintic: project from a point of the plane model",
                                    "plane_quintic", [4, 4]) from None
        gm = gonal_map(model, seed)
        if gm.gonality > 4:
            raise NotApplicable("gonality greater than 4", "gonality_above_4", [gm.gonality, gm.gonality])
        raise NotApplicable("a canonical model has no plane pencil of lines to invert", "no_plane_model",
                            [gm.gonality, gm.gonality])
    else:
        center, nu = pencil_center(model, seed)
        delta, _ = delta_genus(model) if model.adjoint_rule == "ordinary" else (None, None)
        bounds = (plane_gonality_bounds(model.degree, model.max_multiplicity, delta)
                  if delta is not None else None)
        if not model.singularities and bounds is not None:
            bounds = GonalityBounds(model.degree - 1, model.degree - 1, "smooth")
        if model.degree - nu > 4:
            if bounds is None or bounds.lower > 4:
                raise NotApplicable("gonality greater than 4", "gonality_above_4",
                                    bounds.as_list() if bounds else None)
            gm = gonal_map(model, seed)
            if gm.gonality > 4:
                raise NotApplicable("gonality greater than 4", "gonality_above_4", [gm.gonality, gm.gonality])
            raise NotApplicable("the gonal map is not a pencil of lines", "not_a_line_pencil", bounds.as_list())
        num, den = lines_through(model.ring, center)
        R = radical_parametrization(model, num, den, seed)
        out = {"gonality_bounds": bounds.as_list() if bounds else None,
               "map": {"num": str(num), "den": str(den)}, "center": [str(c) for c in center]}
    out.update(R.to_json())
    out["validation"] = validate(model, R, samples, precision, seed)
    return out
