"""Canonical curves of linear colength two: goneric, on a Del Pezzo surface, or on an elliptic cone."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .curvein import CanonicalModel, ConstantMap, map_degree
from .graded import GradedMap, linear_coefficients, vector_to_column
from .groebner import groebner_basis, hilbert_data
from .poly import Poly, PolyRing
from .resolution import GradedQuotient, linear_strand
from .scrollar import (EmptyLocus, GonalMap, ScrollModel, StrandData, SyzygyPoint, _canonical_point,
                       fibers_agree, goneric_pipeline, phi_from_syzygy, scrollar_points_through, strand_data)
from .solve import solve_projective


class UnexpectedBettiValue(ValueError):
    """beta_{2,4} matches none of the tetragonal cases."""


class VertexOnC(ValueError):
    """The curve passes through the vertex of the elliptic cone."""


class NotTetragonalWindow(ValueError):
    """The linear colength is not two."""


@dataclass
class TetragonalClass:
    variant: str                        # goneric | delpezzo | elliptic_cone | plane_sextic | char2_g7
    beta24: int
    genus: int
    scroll: Optional[ScrollModel] = None
    surface: List[Poly] = field(default_factory=list)
    surface_betti: List[int] = field(default_factory=list)
    vertex: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"class": self.variant, "beta_2_4": self.beta24}
        if self.surface:
            out["surface_betti"] = self.surface_betti
            out["surface_degree"] = self.genus - 1
        if self.vertex is not None:
            out["vertex"] = [str(c) for c in self.vertex]
        return out


def surface_ideal(C: CanonicalModel, data: StrandData) -> List[Poly]:
    """Quadrics of the surface: entries of the unique quadratic syzygy of ``psi_{g-4}``."""
    g = C.genus
    psi = data.strand[g - 5]
    d = g - 1
    M = psi.degree_matrix(d)
    K = linalg.nullspace(M, C.field, len(M[0]) if M else 0)
    if len(K) != 1:
        raise UnexpectedBettiValue(f"kernel in degree {d} has dimension {len(K)}, expected 1")
    col = vector_to_column(K[0], C.ring, psi.source_twists, d)
    rows = [q.to_vector(2) for q in col if not q.is_zero()]
    basis = linalg.row_basis(rows, C.field)
    return [C.ring.from_vector(v, 2) for v in basis]


def _contained(small: Sequence[Poly], big: Sequence[Poly], ring: PolyRing) -> bool:
    Q = GradedQuotient(ring, [f for f in big if f.degree() == 2], 2)
    return all(not any(Q.normal_form_vector(f.to_vector(2), 2)) for f in small)


def _syzygy_span(strand: List[GradedMap], ring: PolyRing) -> List[list]:
    """Row basis of the coefficient vectors of all entries of the first linear syzygy matrix."""
    if len(strand) < 2:
        return []
    n = ring.nvars
    vecs = [linear_coefficients(p, n) for row in strand[1].entries for p in row if p]
    return linalg.row_basis(vecs, ring.field, n) if vecs else []


def classify_tetragonal(C: CanonicalModel, data: Optional[StrandData] = None) -> TetragonalClass:
    """Split by ``beta_{2,4}``; on the surface branch extract the surface and test for a cone vertex."""
    data = data or strand_data(C)
    g = C.genus
    if data.colength != 2:
        raise NotTetragonalWindow(f"linear colength is {data.colength}")
    b24 = data.beta_quadratic(2)
    if b24 == g - 4:
        gm = goneric_pipeline(C, 0, data)
        return TetragonalClass("goneric", b24, g, scroll=gm.scroll)
    if b24 == 1 and g == 7:
        return TetragonalClass("char2_g7", b24, g)
    if b24 != comb(g - 2, 2) - 1:
        raise UnexpectedBettiValue(f"beta_2,4 = {b24}")
    Z = surface_ideal(C, data)
    if not _contained(Z, C.ideal, C.ring):
        raise UnexpectedBettiValue("surface quadrics do not vanish on the curve")
    zst = linear_strand(Z, C.ring)
    betti = [m.ncols for m in zst]
    span = _syzygy_span(zst, C.ring)
    if len(span) == g:
        variant = "plane_sextic" if g == 10 else "delpezzo"
        return TetragonalClass(variant, b24, g, surface=Z, surface_betti=betti)
    if len(span) == g - 1:
        v = linalg.nullspace(span, C.field, g)[0]
        return TetragonalClass("elliptic_cone", b24, g, surface=Z, surface_betti=betti,
                               vertex=tuple(v))
    raise UnexpectedBettiValue(f"syzygies of the surface span {len(span)} linear forms")


def surface_hilbert_ok(cls: TetragonalClass, ring: PolyRing) -> bool:
    return hilbert_data(groebner_basis(cls.surface, ring)) == (2, cls.genus - 1)


def _dedupe_pencils(C: CanonicalModel, maps: List[GonalMap], seed: int) -> List[GonalMap]:
    out: List[GonalMap] = []
    for gm in maps:
        if not any(fibers_agree(C.ideal, (gm.num, gm.den), (o.num, o.den), seed, 1) for o in out):
            out.append(gm)
    return out


def delpezzo_g14(C: CanonicalModel, data: Optional[StrandData] = None, seed: int = 0,
                 points: int = 2) -> List[GonalMap]:
    """Degree-4 pencils from scrollar syzygies in ``L_{g-4}`` through seeded curve points."""
    data = data or strand_data(C)
    g = C.genus
    p = g - 4
    psi = data.strand[p - 1]
    found: List[GonalMap] = []
    for k in range(points):
        w = _canonical_point(C, seed + 17 * k) if C.plane is not None else _random_curve_point(C, seed + k)
        for pt in scrollar_points_through(C, psi, p, w, seed):
            scroll = phi_from_syzygy(pt, psi, C.ideal, seed)
            num, den = scroll.structure_map
            try:
                d = map_degree(C.ideal, num, den, 2 * g - 2)
            except ConstantMap:
                continue
            if d == 4:
                found.append(GonalMap(4, num, den, "tetragonal",
                                      {"p": p, "map_degree": d, "multiplicity": pt.multiplicity}, scroll))
    return _dedupe_pencils(C, found, seed)


def _random_curve_point(C: CanonicalModel, seed: int) -> tuple:
    """A rational point of the canonical curve from a seeded hyperplane section."""
    F = C.field
    for k in range(40):
        rng = random.Random(seed * 7919 + k)
        h = C.ring.linear_form([F.random_element(rng, 100) for _ in range(C.ring.nvars)])
        res = solve_projective(list(C.ideal) + [h], C.ring, seed + k)
        if res.points:
            return res.points[0]
    raise EmptyLocus("no rational point found on the curve")


# -- elliptic cone -------------------------------------------------------------------------------

def _coordinates_with_vertex_last(vertex: Sequence, F) -> List[list]:
    """Invertible matrix whose last column is the vertex."""
    n = len(vertex)
    cols: List[list] = []
    for i in range(n):
        unit = [F.one if k == i else F.zero for k in range(n)]
        if linalg.rank(cols + [unit, list(vertex)], F, n) == len(cols) + 2:
            cols.append(unit)
        if len(cols) == n - 1:
            break
    cols.append(list(vertex))
    return linalg.transpose(cols)


def elliptic_curve_of_cone(cls: TetragonalClass, ring: PolyRing) -> Tuple[PolyRing, List[Poly], List[list]]:
    """Ideal of the base curve ``E`` and the rows of the projection from the vertex.

    In coordinates whose last unit vector is the vertex the surface ideal does not involve the
    last variable, so the base curve is cut out by the same equations in the other ones.
    """
    F = ring.field
    n = ring.nvars
    A = _coordinates_with_vertex_last(cls.vertex, F)
    Ainv = linalg.inverse(A, F)
    small = PolyRing(F, n - 1, [f"u{i}" for i in range(n - 1)])
    images = [small.linear_form(A[i][:n - 1]) for i in range(n)]
    IE = [f.substitute(images) for f in cls.surface]
    return small, [f for f in IE if not f.is_zero()], Ainv[:n - 1]


def elliptic_cone_g14(C: CanonicalModel, cls: TetragonalClass, seed: int = 0, tries: int = 60) -> GonalMap:
    """A degree-4 pencil: the double cover of ``E`` composed with a double cover of the line.

    The pencil of hyperplanes through ``g - 3`` rational points of ``E`` (degree ``g - 1``)
    restricts to a ``g^1_2`` on ``E``; this equals projecting ``E`` from ``g - 4`` of the points
    onto a plane cubic and then taking lines through the last one.
    """
    F = C.field
    g = C.genus
    if all(F.is_zero(f.evaluate(cls.vertex)) for f in C.ideal):
        raise VertexOnC("curve passes through the cone vertex")
    small, IE, proj = elliptic_curve_of_cone(cls, C.ring)
    rng = random.Random(seed)
    points: List[tuple] = []
    for k in range(tries):
        h = small.linear_form([F.random_element(rng, 100) for _ in range(small.nvars)])
        for pt in solve_projective(list(IE) + [h], small, seed + k).points:
            if linalg.rank([list(q) for q in points] + [list(pt)], F, small.nvars) == len(points) + 1:
                points.append(pt)
        if len(points) < g - 3:
            continue
        pencil = linalg.nullspace([list(q) for q in points[:g - 3]], F, small.nvars)
        forms = [C.ring.linear_form([F.sum(F.mul(c, proj[i][j]) for i, c in enumerate(v))
                                     for j in range(g)]) for v in pencil]
        try:
            d = map_degree(C.ideal, forms[0], forms[1], 2 * g - 2)
        except ConstantMap:
            d = 0
        if d == 4:
            return GonalMap(4, forms[0], forms[1], "tetragonal",
                            {"class": "elliptic_cone", "map_degree": d, "unique": False,
                             "base_points": [[str(c) for c in q] for q in points[:g - 3]]})
        points = points[1:]
    raise EmptyLocus("not enough rational points on the elliptic curve")


def tetragonal_report(C: CanonicalModel, seed: int = 0, data: Optional[StrandData] = None) -> Tuple[TetragonalClass, List[GonalMap]]:
    data = data or strand_data(C)
    cls = classify_tetragonal(C, data)
    if cls.variant in ("delpezzo", "plane_sextic"):
        return cls, delpezzo_g14(C, data, seed)
    if cls.variant == "elliptic_cone":
        return cls, [elliptic_cone_g14(C, cls, seed)]
    if cls.variant == "goneric":
        gm = goneric_pipeline(C, seed, data)
        return cls, [gm]
    return cls, []
