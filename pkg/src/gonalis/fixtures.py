"""Seeded constructions of curves and scrolls used by the tests, demos and CLI."""
from __future__ import annotations

import json
import random
from importlib import resources
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .curvein import CanonicalModel, PlaneModel, Singularity, canonical_ideal
from .fields import DEFAULT_PRIME, GF, QQ, Field
from .graded import GradedMap
from .poly import Poly, PolyRing, monomials

PLANE_NAMES = ["x", "y", "z"]

# plane models whose canonical ideals are computed from Newton-polygon adjoints
GENUS10_PLANE = "x^4*z^5 + y^9 + y^2*z^7"     # 5-fold point at (1:0:0)
GENUS12_PLANE = "x^9 + z^9 + y^4*z^5"         # 4-fold point at (0:1:0)
GENUS9_OCTIC = "x^8 + z^8 + y^4*z^4"          # 4-fold point at (0:1:0)


def default_field(field: Optional[Field] = None) -> Field:
    return field if field is not None else GF(DEFAULT_PRIME)


def plane_ring(field: Optional[Field] = None) -> PolyRing:
    return PolyRing(default_field(field), 3, PLANE_NAMES)


def _nonzero(F: Field, rng: random.Random, height: int = 50):
    while True:
        c = F.random_element(rng, height)
        if not F.is_zero(c):
            return c


def nodal_sextic(seed: int = 0, field: Optional[Field] = None, nodes: int = 3) -> PlaneModel:
    """Random sextic with ordinary nodes at the coordinate points (and (1:1:1) when ``nodes = 4``)."""
    R = plane_ring(field)
    F = R.field
    rng = random.Random(seed)
    terms = {m: _nonzero(F, rng, 9) for m in monomials(3, 6) if max(m) <= 4}
    poly = Poly(R, terms)
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if nodes == 4:
        # impose a double point at (1:1:1): value and gradient vanish there
        pts.append((1, 1, 1))
        poly = _impose_double_point(poly, (1, 1, 1), rng)
    elif nodes != 3:
        raise ValueError("nodes must be 3 or 4")
    return PlaneModel(poly, [Singularity(tuple(F.convert(c) for c in p), 2) for p in pts])


def _impose_double_point(poly: Poly, pt, rng) -> Poly:
    R = poly.ring
    F = R.field
    mons = [m for m in monomials(3, poly.degree()) if max(m) <= 4]
    conds = []
    for i in range(3):
        conds.append([R.monomial(m).derivative(i).evaluate(pt) for m in mons])
    ker = linalg.nullspace(conds, F, len(mons))
    out = R.zero()
    for v in ker:
        terms = {m: c for m, c in zip(mons, v) if not F.is_zero(c)}
        out = out + Poly(R, terms).scale(_nonzero(F, rng, 9))
    return out


def _derivative_conditions(R: PolyRing, mons, point, mult: int) -> List[list]:
    """Rows forcing multiplicity ``mult`` at ``point``: all partials of order ``mult - 1`` vanish."""
    rows = []
    for order in monomials(3, mult - 1):
        row = []
        for m in mons:
            f = R.monomial(m)
            for i, k in enumerate(order):
                for _ in range(k):
                    f = f.derivative(i)
            row.append(f.evaluate(point))
        rows.append(row)
    return rows


def singular_plane_curve(degree: int, points: Sequence[tuple], seed: int = 0,
                         field: Optional[Field] = None) -> PlaneModel:
    """Random plane curve with the prescribed ``(point, multiplicity)`` pairs (ordinary for general seeds)."""
    R = plane_ring(field)
    F = R.field
    rng = random.Random(seed)
    pts = [(tuple(F.convert(c) for c in p), m) for p, m in points]
    mons = monomials(3, degree)
    conds = [row for p, m in pts for row in _derivative_conditions(R, mons, p, m)]
    ker = linalg.nullspace(conds, F, len(mons))
    poly = R.zero()
    for v in ker:
        poly = poly + Poly(R, {m: c for m, c in zip(mons, v) if not F.is_zero(c)}).scale(_nonzero(F, rng, 99))
    return PlaneModel(poly, [Singularity(p, m) for p, m in pts])


NINE_NODES = [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 2, 3), (1, 5, 2), (2, 1, 7), (3, 4, 1), (1, 6, 5), (4, 1, 3)]


def genus9_goneric(seed: int = 0, field: Optional[Field] = None) -> PlaneModel:
    """Octic with a triple point at ``(0:0:1)`` and nine nodes: genus 9 with a unique pencil of degree 5."""
    return singular_plane_curve(8, [((0, 0, 1), 3)] + [(p, 2) for p in NINE_NODES], seed, field)


def bielliptic_genus6(seed: int = 0, field: Optional[Field] = None) -> CanonicalModel:
    """Double cover of an elliptic quintic branched along a quadric section.

    ``E`` is cut by the Pfaffians of a skew 5x5 matrix of linear forms in ``x0..x4``; the curve
    adds ``x5^2 = q``, so it lies on the cone over ``E`` with vertex ``(0:...:0:1)``.
    """
    F = default_field(field)
    ring = PolyRing(F, 6, [f"x{i}" for i in range(6)])
    rng = random.Random(seed)

    def linear() -> Poly:
        return ring.linear_form([F.random_element(rng, 50) for _ in range(5)] + [F.zero])

    A = [[ring.zero() for _ in range(5)] for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            A[i][j] = linear()
            A[j][i] = -A[i][j]
    pfaffians = []
    for drop in range(5):
        a, b, c, d = [k for k in range(5) if k != drop]
        pfaffians.append(A[a][b] * A[c][d] - A[a][c] * A[b][d] + A[a][d] * A[b][c])
    q = ring.zero()
    for _ in range(3):
        q = q + linear() * linear()
    x5 = ring.gens()[5]
    return CanonicalModel(ring, pfaffians + [x5 * x5 - q], 6)


def nodal_quintic(seed: int = 0, field: Optional[Field] = None) -> PlaneModel:
    """Quintic with a node at (0:0:1): genus 5, trigonal via the node projection."""
    R = plane_ring(field)
    F = R.field
    rng = random.Random(seed)
    terms = {m: _nonzero(F, rng, 9) for m in monomials(3, 5) if m[2] <= 3}
    return PlaneModel(Poly(R, terms), [Singularity((F.zero, F.zero, F.one), 2)])


def binodal_quintic(seed: int = 0, field: Optional[Field] = None) -> PlaneModel:
    """Quintic with nodes at (1:0:0) and (0:1:0): genus 4."""
    R = plane_ring(field)
    F = R.field
    rng = random.Random(seed)
    terms = {m: _nonzero(F, rng, 9) for m in monomials(3, 5) if m[0] <= 3 and m[1] <= 3}
    return PlaneModel(Poly(R, terms), [Singularity((F.one, F.zero, F.zero), 2),
                                       Singularity((F.zero, F.one, F.zero), 2)])


def smooth_plane_curve(degree: int, seed: int = 0, field: Optional[Field] = None) -> PlaneModel:
    R = plane_ring(field)
    rng = random.Random(seed)
    return PlaneModel(R.random_form(degree, rng, 9), [])


def smooth_quartic(seed: int = 0, field: Optional[Field] = None) -> PlaneModel:
    return smooth_plane_curve(4, seed, field)


def newton_plane(text: str, field: Optional[Field] = None) -> PlaneModel:
    return PlaneModel(plane_ring(field).parse(text), [], "newton")


def genus10_plane(field: Optional[Field] = None) -> PlaneModel:
    return newton_plane(GENUS10_PLANE, field)


def genus12_plane(field: Optional[Field] = None) -> PlaneModel:
    return newton_plane(GENUS12_PLANE, field)


def genus9_octic_plane(field: Optional[Field] = None) -> PlaneModel:
    return newton_plane(GENUS9_OCTIC, field)


def canonical_from_plane(P: PlaneModel) -> CanonicalModel:
    return canonical_ideal(P)


def plucker_quadrics(ring: PolyRing, images: Sequence[Poly]) -> List[Poly]:
    """Plucker relations of G(2,5) with ``p_ij`` replaced by ``images`` (10 forms, lexicographic pairs)."""
    pairs = list(combinations(range(5), 2))
    p = dict(zip(pairs, images))
    out = []
    for a, b, c, d in combinations(range(5), 4):
        out.append(p[a, b] * p[c, d] - p[a, c] * p[b, d] + p[a, d] * p[b, c])
    return out


def random_genus6(seed: int = 0, field: Optional[Field] = None) -> CanonicalModel:
    """General genus-6 canonical curve: a quadric section of a linear section of G(2,5)."""
    F = default_field(field)
    ring = PolyRing(F, 6, [f"x{i}" for i in range(6)])
    rng = random.Random(seed)
    images = [ring.linear_form([F.random_element(rng, 20) for _ in range(6)]) for _ in range(10)]
    quads = plucker_quadrics(ring, images)
    quads.append(ring.random_form(2, rng, 20))
    return CanonicalModel(ring, quads, 6)


# -- scrolls -------------------------------------------------------------------------------

def scroll_matrix(ring: PolyRing, scroll_type: Sequence[int], offset: int = 0) -> GradedMap:
    """Block-Hankel ``2 x sum(e_i)`` matrix of the scroll ``S(e_1, ..., e_k)`` on consecutive variables.

    Blocks with ``e_i = 0`` contribute a cone vertex (one unused variable each).
    """
    rows: Tuple[List[Poly], List[Poly]] = ([], [])
    k = offset
    for e in scroll_type:
        for j in range(e):
            rows[0].append(ring.var(k + j))
            rows[1].append(ring.var(k + j + 1))
        k += e + 1
    if k > ring.nvars:
        raise ValueError("not enough variables for this scroll type")
    return GradedMap(ring, [1] * len(rows[0]), [0, 0], [rows[0], rows[1]])


def random_linear_change(ring: PolyRing, rng: random.Random) -> List[Poly]:
    """Images of the variables under a random invertible linear substitution."""
    F = ring.field
    n = ring.nvars
    while True:
        A = [[F.random_element(rng, 10) for _ in range(n)] for _ in range(n)]
        if linalg.rank(A, F) == n:
            return [ring.linear_form(row) for row in A]


def random_scroll(f: int, seed: int = 0, field: Optional[Field] = None, extra: Optional[int] = None,
                  cone: bool = False) -> Tuple[GradedMap, List[int]]:
    """Seeded 1-generic ``2 x (f+1)`` matrix and its scroll type.

    ``extra`` is the number of blocks (the scroll dimension); the type is a random
    composition of ``f+1`` into that many positive parts, plus one zero part for cones.
    """
    F = default_field(field)
    rng = random.Random(seed)
    k = extra if extra is not None else rng.randint(1, min(3, f + 1))
    cuts = sorted(rng.sample(range(1, f + 1), k - 1)) if k > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [f + 1])]
    if cone:
        parts = [0] + parts
    n = sum(e + 1 for e in parts)
    ring = PolyRing(F, n, [f"x{i}" for i in range(n)])
    M = scroll_matrix(ring, parts)
    change = random_linear_change(ring, rng)
    rows = [[p.substitute(change) for p in row] for row in M.entries]
    return GradedMap(ring, [1] * (f + 1), [0, 0], rows), sorted(parts)


def scroll_of_type(scroll_type: Sequence[int], seed: int = 0, field: Optional[Field] = None) -> GradedMap:
    """The scroll ``S(e_1, ..., e_k)`` in seeded random coordinates."""
    if sum(scroll_type) < 2 or any(e < 0 for e in scroll_type):
        raise ValueError("scroll type needs nonnegative parts summing to at least 2")
    F = default_field(field)
    n = sum(e + 1 for e in scroll_type)
    ring = PolyRing(F, n, [f"x{i}" for i in range(n)])
    M = scroll_matrix(ring, scroll_type)
    change = random_linear_change(ring, random.Random(seed))
    return GradedMap(ring, M.source_twists, [0, 0], [[p.substitute(change) for p in row] for row in M.entries])


def minors2(M: GradedMap) -> List[Poly]:
    """All 2x2 minors of a two-row matrix."""
    a, b = M.entries
    out = []
    for i, j in combinations(range(M.ncols), 2):
        m = a[i] * b[j] - a[j] * b[i]
        if not m.is_zero():
            out.append(m)
    return out


def rational_normal_curve(m: int, field: Optional[Field] = None) -> Tuple[PolyRing, List[Poly]]:
    """Ideal of the degree-``m`` rational normal curve in ``P^m`` (Hankel minors)."""
    ring = PolyRing(default_field(field), m + 1, [f"x{i}" for i in range(m + 1)])
    return ring, minors2(scroll_matrix(ring, [m]))


def segre_quadric(field: Optional[Field] = None) -> Tuple[PolyRing, List[Poly]]:
    ring = PolyRing(default_field(field), 4, [f"x{i}" for i in range(4)])
    x = ring.gens()
    return ring, [x[0] * x[3] - x[1] * x[2]]


# -- shipped data ------------------------------------------------------------------------------

def curve_text(name: str) -> str:
    """Contents of a shipped curve file, by stem (e.g. ``"sextic3nodes"``)."""
    return resources.files("gonalis").joinpath("data", "curves", f"{name}.txt").read_text()


def curve_path(name: str):
    return resources.files("gonalis").joinpath("data", "curves", f"{name}.txt")


def load_curve(name: str):
    from .curvein import parse_curve_text
    return parse_curve_text(curve_text(name))


def reference_tables() -> dict:
    """Reference Betti tables keyed by fixture name, each ``{"genus": g, "rows": [...]}``."""
    return json.loads(resources.files("gonalis").joinpath("data", "betti_tables.json").read_text())
