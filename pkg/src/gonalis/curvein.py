"""Curve input: plane models, canonical ideals via adjoints, and map degrees."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg, univariate
from .fields import DEFAULT_PRIME, Field, GF, QQ, parse_field
from .groebner import GroebnerBasis, groebner_basis, hilbert_data, quotient_dimension
from .poly import Poly, PolyRing, monomial_index, monomials
from .resolution import GradedQuotient, ResolutionError, complement_rows, hilbert_data_by_reduction


class NonOrdinaryInput(ValueError):
    """A listed singularity is not an ordinary multiple point of the stated multiplicity."""


class GenusTooSmall(ValueError):
    """No canonical embedding exists (genus at most 2)."""


class HyperellipticImage(ValueError):
    """The canonical system maps 2:1 onto a rational normal curve."""

    def __init__(self, msg, image_ideal=None):
        super().__init__(msg)
        self.image_ideal = image_ideal


class Unclassifiable(ValueError):
    """Hilbert data of the canonical image match neither expected signature."""


class ConstantMap(ValueError):
    """The two forms are proportional on the curve."""


class InputError(ValueError):
    """Malformed curve file; ``line`` is 1-based."""

    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


# -- data -------------------------------------------------------------------------

@dataclass
class Singularity:
    point: Tuple
    multiplicity: int
    ordinary: bool = True


@dataclass
class PlaneModel:
    """Plane curve ``F = 0`` with its multiple points."""

    F: Poly
    singularities: List[Singularity] = field(default_factory=list)
    adjoint_rule: str = "ordinary"   # or "newton" for Newton-nondegenerate curves

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    @property
    def field(self) -> Field:
        return self.F.ring.field

    @property
    def degree(self) -> int:
        return self.F.degree()

    @property
    def max_multiplicity(self) -> int:
        return max((s.multiplicity for s in self.singularities), default=1)


@dataclass
class CanonicalModel:
    """Canonical ideal ``I_C`` in ``g`` variables, optionally with the adjoint back map."""

    ring: PolyRing
    ideal: List[Poly]
    genus: int
    back_map: Optional[List[Poly]] = None
    plane: Optional[PlaneModel] = None

    @property
    def field(self) -> Field:
        return self.ring.field

    def quadrics(self) -> List[Poly]:
        return [f for f in self.ideal if f.degree() == 2]


@dataclass
class HyperellipticModel:
    """``y^2 = f(x)``; ``f`` is a univariate coefficient list, constant first."""

    f: list
    field: Field

    @property
    def genus(self) -> int:
        d = len(self.f) - 1
        return (d - 1) // 2


# -- local analysis at a point ----------------------------------------------------

def _local_ring(field: Field) -> PolyRing:
    return PolyRing(field, 2, ["u", "v"])


def local_expansion(G: Poly, point: Sequence) -> Poly:
    """``G`` in affine coordinates centred at ``point`` (a 2-variable polynomial)."""
    F = G.field
    pt = [F.convert(c) for c in point]
    c = next(i for i in range(3) if not F.is_zero(pt[i]))
    inv = F.inv(pt[c])
    pt = [F.mul(inv, x) for x in pt]
    loc = _local_ring(F)
    u, v = loc.gens()
    others = [i for i in range(3) if i != c]
    images = [None] * 3
    images[c] = loc.one()
    images[others[0]] = loc.const(pt[others[0]]) + u
    images[others[1]] = loc.const(pt[others[1]]) + v
    return G.change_ring(PolyRing(F, 3, G.ring.names)).substitute(images)


def order_at(G: Poly, point: Sequence) -> int:
    loc = local_expansion(G, point)
    return min((sum(e) for e in loc.terms), default=10 ** 9)


def tangent_cone_is_ordinary(G: Poly, point: Sequence, nu: int) -> bool:
    """Squarefree tangent cone of degree ``nu`` (distinct tangent lines over the closure)."""
    loc = local_expansion(G, point)
    cone = loc.homogeneous_part(nu)
    if cone.is_zero():
        return False
    F = G.field
    # binary form T(u, v) -> t-polynomial T(t, 1); root multiplicity at infinity = nu - deg
    coeffs = [F.zero] * (nu + 1)
    for e, c in cone.terms.items():
        coeffs[e[0]] = c
    f = univariate.trim(F, coeffs)
    if nu - (len(f) - 1) >= 2:
        return False
    return univariate.is_squarefree(F, f)


def delta_genus(P: PlaneModel) -> Tuple[int, int]:
    """``(delta, genus)`` for a plane model with ordinary singularities."""
    for s in P.singularities:
        if not s.ordinary:
            raise NonOrdinaryInput(f"singularity at {s.point} is not ordinary")
    d = P.degree
    delta = sum(s.multiplicity * (s.multiplicity - 1) // 2 for s in P.singularities)
    return delta, (d - 1) * (d - 2) // 2 - delta


def check_singularities(P: PlaneModel) -> None:
    """Verify multiplicities and ordinarity of every listed point."""
    for s in P.singularities:
        o = order_at(P.F, s.point)
        if o != s.multiplicity:
            raise NonOrdinaryInput(f"F has multiplicity {o} at {s.point}, not {s.multiplicity}")
        s.ordinary = tangent_cone_is_ordinary(P.F, s.point, s.multiplicity)
        if not s.ordinary:
            raise NonOrdinaryInput(f"tangent cone at {s.point} has a repeated line")


# -- adjoints ----------------------------------------------------------------------

def adjoints(P: PlaneModel) -> List[Poly]:
    """Basis of degree ``d-3`` forms vanishing to order ``nu-1`` at each ``nu``-fold point."""
    if P.adjoint_rule == "newton":
        return newton_adjoints(P.F)
    d = P.degree
    R = P.ring
    F = R.field
    mons = monomials(3, d - 3)
    conditions: List[list] = []
    for s in P.singularities:
        need = s.multiplicity - 1
        cols = []
        for m in mons:
            loc = local_expansion(R.monomial(m), s.point)
            cols.append({e: c for e, c in loc.terms.items() if sum(e) < need})
        keys = sorted({e for col in cols for e in col})
        for k in keys:
            conditions.append([col.get(k, F.zero) for col in cols])
    basis = linalg.nullspace(conditions, F, len(mons)) if conditions else linalg.identity(len(mons), F)
    basis = linalg.rref(basis, F, len(mons))[0] if basis else []
    return [R.from_vector(v, d - 3) for v in basis]


def newton_interior_points(F: Poly) -> List[Tuple[int, int]]:
    """Interior lattice points of the Newton polygon of ``F(x, y, 1)``."""
    pts = sorted({(e[0], e[1]) for e in F.terms})
    hull = _convex_hull(pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    out = []
    for i in range(min(xs), max(xs) + 1):
        for j in range(min(ys), max(ys) + 1):
            if _strictly_inside((i, j), hull):
                out.append((i, j))
    return out


def newton_adjoints(F: Poly) -> List[Poly]:
    """Adjoint forms ``x^(i-1) y^(j-1) z^(d-1-i-j)`` for interior points ``(i, j)``.

    Valid for curves nondegenerate with respect to their Newton polygon.
    """
    d = F.degree()
    R = F.ring
    out = []
    for i, j in newton_interior_points(F):
        k = d - 3 - (i - 1) - (j - 1)
        if k < 0:
            raise NonOrdinaryInput("Newton polygon does not fit the projective degree")
        out.append(R.monomial((i - 1, j - 1, k)))
    out.sort(key=lambda p: tuple(-x for x in p.lead_exp()))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _strictly_inside(p, hull):
    n = len(hull)
    if n < 3:
        return False
    return all(_cross(hull[k], hull[(k + 1) % n], p) > 0 for k in range(n))


# -- canonical ideal -------------------------------------------------------------------

def _image_kernel(forms: Sequence[Poly], F: Poly, k: int, target: PolyRing) -> List[Poly]:
    """Degree-``k`` forms ``G`` in ``len(forms)`` variables with ``F | G(forms)``."""
    K = F.field
    g = len(forms)
    a = forms[0].degree()
    D = k * a
    d = F.degree()
    mons = monomials(g, k)
    plane_idx = monomial_index(3, D)
    cache: Dict[tuple, Poly] = {tuple([0] * g): F.ring.one()}

    def value(m):
        m = tuple(m)
        if m not in cache:
            i = next(i for i, x in enumerate(m) if x)
            prev = list(m)
            prev[i] -= 1
            cache[m] = value(prev) * forms[i]
        return cache[m]

    cols = [value(m).to_vector(D) for m in mons]
    if D - d >= 0:
        cols += [(F * F.ring.monomial(mu)).to_vector(D) for mu in monomials(3, D - d)]
    M = linalg.transpose(cols)
    ker = linalg.nullspace(M, K, len(cols))
    vecs = [v[: len(mons)] for v in ker]
    vecs = [v for v in vecs if any(not K.is_zero(x) for x in v)]
    if not vecs:
        return []
    rows = linalg.rref(vecs, K, len(mons))[0]
    return [target.from_vector(r, k) for r in rows]


def image_ideal(forms: Sequence[Poly], F: Poly, degrees: Sequence[int], names=None) -> Tuple[PolyRing, List[Poly]]:
    """Minimal generators (in the given degrees) of the ideal of the image of ``C`` under ``forms``."""
    g = len(forms)
    ring = PolyRing(F.field, g, names or [f"x{i}" for i in range(g)])
    gens: List[Poly] = []
    for k in degrees:
        part = _image_kernel(forms, F, k, ring)
        if not gens:
            gens.extend(part)
            continue
        Q = GradedQuotient(ring, gens, k)
        old = Q.rref[k][0]
        new = complement_rows(old, [p.to_vector(k) for p in part], F.field, len(monomials(g, k)))
        gens.extend(ring.from_vector(v, k) for v in new)
    return ring, gens


def canonical_ideal(P: PlaneModel, check: bool = True) -> CanonicalModel:
    """Canonical model of a plane curve through its adjoint system."""
    if P.adjoint_rule == "ordinary":
        if check:
            check_singularities(P)
        _, g = delta_genus(P)
    else:
        g = None
    adj = adjoints(P)
    if g is not None and len(adj) != g:
        raise NonOrdinaryInput(f"adjoint system has dimension {len(adj)}, expected genus {g}")
    g = len(adj)
    if g <= 2:
        raise GenusTooSmall(f"genus {g} curves have no canonical embedding")
    degrees = [2, 3, 4] if g == 3 else [2, 3]
    ring, gens = image_ideal(adj, P.F, degrees)
    nquad = sum(1 for f in gens if f.degree() == 2)
    if nquad == comb(g - 1, 2) and g >= 3 and nquad != comb(g - 2, 2):
        raise HyperellipticImage("canonical image is a rational normal curve", gens)
    model = CanonicalModel(ring, gens, g, adj, P)
    if check:
        kind = classify_canonical_image(gens, g, ring)
        if kind != "nonhyperelliptic":
            raise HyperellipticImage(f"canonical image classified {kind}", gens)
    return model


def classify_canonical_image(ideal: Sequence[Poly], g: int, ring: Optional[PolyRing] = None) -> str:
    """'nonhyperelliptic' for degree 2g-2 curves, 'hyperelliptic' for rational normal curves."""
    ring = ring or ideal[0].ring
    dd = curve_hilbert_data(ideal, ring)
    if dd == (1, 2 * g - 2):
        return "nonhyperelliptic"
    if dd == (1, g - 1):
        return "hyperelliptic"
    raise Unclassifiable(f"Hilbert data {dd} match neither (1, {2 * g - 2}) nor (1, {g - 1})")


def curve_hilbert_data(ideal: Sequence[Poly], ring: Optional[PolyRing] = None) -> Tuple[int, int]:
    """Dimension and degree; tries the Artinian-reduction shortcut before a Groebner basis."""
    ring = ring or ideal[0].ring
    try:
        return hilbert_data_by_reduction(ideal, ring)
    except ResolutionError:
        return hilbert_data(groebner_basis(list(ideal), ring))


# -- map degrees ----------------------------------------------------------------------

def _proportional_mod(I: Sequence[Poly], a: Poly, b: Poly) -> bool:
    k = a.degree()
    ring = a.ring
    Q = GradedQuotient(ring, [f for f in I if f.degree() <= k], k)
    va = Q.normal_form_vector(a.to_vector(k), k)
    vb = Q.normal_form_vector(b.to_vector(k), k)
    return linalg.rank([va, vb], ring.field) < 2


def map_degree(I: Sequence[Poly], num: Poly, den: Poly, curve_degree: Optional[int] = None,
               method: str = "base", seed: int = 0) -> int:
    """Degree of ``num/den`` restricted to the smooth curve ``V(I)``.

    ``method='base'`` subtracts the length of the base scheme ``I + (num, den)``
    from ``deg(C) * deg(num)``; ``method='fiber'`` counts points of a generic fiber
    in a seeded affine chart and checks a second fiber.
    """
    if num.degree() != den.degree():
        raise ValueError("numerator and denominator must have the same degree")
    ring = num.ring
    I = [f if f.ring is ring else f.change_ring(ring) for f in I]
    if _proportional_mod(I, num, den):
        raise ConstantMap("map is constant on the curve")
    if method == "fiber":
        return _fiber_degree(I, num, den, seed)
    if curve_degree is None:
        curve_degree = curve_hilbert_data(I, ring)[1]
    base = list(I) + [num, den]
    if num.degree() == 1:
        base = _eliminate_linear(base, [num, den])
    dim, length = hilbert_data(groebner_basis(base))
    if dim < 0:
        length = 0
    elif dim > 0:
        raise ConstantMap("base locus contains a curve component")
    return curve_degree * num.degree() - length


def _eliminate_linear(polys: Sequence[Poly], linears: Sequence[Poly]) -> List[Poly]:
    """Restrict to the linear subspace cut by ``linears`` (fewer variables)."""
    ring = polys[0].ring
    F = ring.field
    n = ring.nvars
    rows = [[l.coefficient(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)] for l in linears]
    R, piv = linalg.rref(rows, F, n)
    free = [i for i in range(n) if i not in piv]
    small = PolyRing(F, len(free), [ring.names[i] for i in free])
    images: List[Optional[Poly]] = [None] * n
    for k, i in enumerate(free):
        images[i] = small.var(k)
    for row, p in zip(R, piv):
        expr = small.zero()
        for k, i in enumerate(free):
            if not F.is_zero(row[i]):
                expr = expr - small.var(k).scale(row[i])
        images[p] = expr
    out = [f.substitute(images) for f in polys if not f.is_zero()]
    return [f for f in out if not f.is_zero()] or [small.zero()]


def _fiber_degree(I, num, den, seed):
    ring = num.ring
    F = ring.field
    n = ring.nvars
    rng = random.Random(seed)
    results = []
    for attempt in range(2):
        # random chart: x_{n-1} -> random linear form, then dehomogenize the last coordinate
        coeffs = [F.random_element(rng, 30) for _ in range(n)]
        while F.is_zero(coeffs[-1]):
            coeffs[-1] = F.random_element(rng, 30)
        lam = F.random_element(rng, 1000)
        aff = PolyRing(F, n, ring.names[:n - 1] + ["t"])
        xs = aff.gens()
        # chart: sum c_i x_i = 1, solve for x_{n-1}
        last = (aff.one() - sum((xs[i].scale(coeffs[i]) for i in range(n - 1)), aff.zero())).scale(F.inv(coeffs[-1]))
        images = xs[: n - 1] + [last]
        t = xs[-1]
        eqs = [f.substitute(images) for f in I]
        nn, dd = num.substitute(images), den.substitute(images)
        eqs.append(nn - dd.scale(lam))
        eqs.append(t * dd - aff.one())
        gb = groebner_basis([e for e in eqs if not e.is_zero()], aff)
        results.append(quotient_dimension(gb))
    if results[0] != results[1]:
        raise RuntimeError(f"fiber counts disagree across seeds: {results}")
    return results[0]


# -- plane pencils in canonical coordinates --------------------------------------------

def plane_pencil_in_canonical(model: CanonicalModel, num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Linear forms on ``P^{g-1}`` inducing the plane map ``num/den`` on the curve.

    Finds ``H`` with ``num*H`` and ``den*H`` both in the adjoint span.
    """
    adj = model.back_map
    if adj is None:
        raise ValueError("model has no adjoint back map")
    R = adj[0].ring
    K = R.field
    a = adj[0].degree()
    k = a - num.degree()
    if k < 0:
        raise ValueError("pencil degree exceeds adjoint degree")
    hm = monomials(3, k)
    nA = len(adj)
    # unknowns: H coefficients (len hm), alpha (nA), beta (nA)
    # num*H - sum alpha_i adj_i = 0 and den*H - sum beta_i adj_i = 0
    cols = []
    for m in hm:
        mm = R.monomial(m)
        cols.append((num * mm).to_vector(a) + (den * mm).to_vector(a))
    zero = [K.zero] * len(monomials(3, a))
    for A in adj:
        cols.append([K.neg(x) for x in A.to_vector(a)] + zero)
    for A in adj:
        cols.append(zero + [K.neg(x) for x in A.to_vector(a)])
    ker = linalg.nullspace(linalg.transpose(cols), K, len(cols))
    for v in ker:
        alpha = v[len(hm): len(hm) + nA]
        beta = v[len(hm) + nA:]
        if any(not K.is_zero(x) for x in alpha) and any(not K.is_zero(x) for x in beta):
            return model.ring.linear_form(alpha), model.ring.linear_form(beta)
    raise ValueError("pencil is not cut by adjoints of this degree")


def pullback_to_plane(model: CanonicalModel, form: Poly) -> Poly:
    """Compose a form on ``P^{g-1}`` with the adjoint map."""
    return form.substitute(model.back_map)


# -- input files ---------------------------------------------------------------------------

_POINT = re.compile(r"\(\s*([^:()]+)\s*:\s*([^:()]+)\s*:\s*([^:()]+)\s*\)")


def parse_curve_text(text: str) -> Union[PlaneModel, CanonicalModel, HyperellipticModel]:
    """Parse the line-oriented curve format (see the README)."""
    field_ = GF(DEFAULT_PRIME)
    kind = None
    degree = None
    genus = None
    F = None
    sings: List[Singularity] = []
    ideal_lines: List[Tuple[int, str]] = []
    in_ideal = False
    hyper = None
    rule = "ordinary"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        try:
            if in_ideal:
                ideal_lines.append((lineno, line.rstrip(",")))
                continue
            if low.startswith("field"):
                field_ = parse_field(line[5:])
            elif low.startswith("plane"):
                kind = "plane"
                degree = int(line.split()[1])
            elif low.startswith("adjoints"):
                rule = line.split()[1].strip().lower()
                if rule not in ("ordinary", "newton"):
                    raise ValueError(f"unknown adjoint rule {rule!r}")
            elif low.startswith("f ="):
                F = (lineno, line.split("=", 1)[1])
            elif low.startswith("sing"):
                m = _POINT.search(line)
                if not m:
                    raise ValueError("expected a point (a:b:c)")
                mult = int(line.split("mult", 1)[1].split()[0])
                sings.append(Singularity(tuple(field_.parse(c.strip()) for c in m.groups()), mult))
            elif low.startswith("canonical"):
                kind = "canonical"
                genus = int(line.split()[1])
            elif low.startswith("ideal"):
                in_ideal = True
            elif low.startswith("hyperelliptic"):
                kind = "hyperelliptic"
                hyper = (lineno, line.split("=", 1)[1])
            else:
                raise ValueError(f"unrecognised line {line!r}")
        except (ValueError, IndexError, ZeroDivisionError) as exc:
            raise InputError(str(exc), lineno) from None
    if kind == "plane":
        if F is None:
            raise InputError("plane model without 'F = ...'")
        ring = PolyRing(field_, 3, ["x", "y", "z"])
        try:
            poly = ring.parse(F[1])
        except ValueError as exc:
            raise InputError(str(exc), F[0]) from None
        if not poly.is_homogeneous() or poly.degree() != degree:
            raise InputError(f"F is not homogeneous of degree {degree}", F[0])
        for s in sings:
            s.point = tuple(field_.convert(c) for c in s.point)
        return PlaneModel(poly, sings, rule)
    if kind == "canonical":
        ring = PolyRing(field_, genus, [f"x{i}" for i in range(genus)])
        gens = []
        for lineno, ln in ideal_lines:
            try:
                gens.append(ring.parse(ln))
            except ValueError as exc:
                raise InputError(str(exc), lineno) from None
        return CanonicalModel(ring, gens, genus)
    if kind == "hyperelliptic":
        ring = PolyRing(field_, 1, ["x"])
        try:
            f = ring.parse(hyper[1])
        except ValueError as exc:
            raise InputError(str(exc), hyper[0]) from None
        coeffs = [f.coefficient((i,)) for i in range(f.degree() + 1)]
        return HyperellipticModel(coeffs, field_)
    raise InputError("no 'plane', 'canonical' or 'hyperelliptic' declaration")


def format_canonical(model: CanonicalModel) -> str:
    """Serialize a canonical model in the input format."""
    lines = [_field_line(model.field), f"canonical {model.genus}", "ideal:"]
    lines += [str(f) for f in model.ideal]
    return "\n".join(lines) + "\n"


def _field_line(field: Field) -> str:
    return f"field {field}".replace("GF(", "GF ").replace(")", "")


def format_plane(model: PlaneModel) -> str:
    """Serialize a plane model in the input format."""
    lines = [_field_line(model.field), f"plane {model.degree}"]
    if model.adjoint_rule != "ordinary":
        lines.append(f"adjoints {model.adjoint_rule}")
    lines.append(f"F = {model.F}")
    for s in model.singularities:
        a, b, c = (str(v) for v in s.point)
        lines.append(f"sing ({a}:{b}:{c}) mult {s.multiplicity}")
    return "\n".join(lines) + "\n"
