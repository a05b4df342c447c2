"""Scrollar syzygies, their loci, and gonal maps read off from rational normal scrolls.

Index convention: ``psi_p`` is the p-th differential of the linear strand, generated
in degree ``p+1``. A scrollar syzygy in ``L_p`` spans ``p+1`` linear forms; its scroll
has codimension ``p``, degree ``p+1`` and induces a pencil of degree ``g - p``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import flint
import numpy as np

from . import linalg, univariate
from .curvein import (CanonicalModel, ConstantMap, HyperellipticModel, PlaneModel, canonical_ideal,
                      map_degree, plane_pencil_in_canonical, pullback_to_plane)
from .fields import Field
from .graded import GradedMap, linear_coefficients
from .groebner import GroebnerBasis, groebner_basis, hilbert_data
from .invariants import clifford_window, gonality_upper_bound, plane_gonality_bounds, scroll_betti_row
from .poly import Poly, PolyRing, monomial_index, monomials
from .resolution import (BettiTable, GradedQuotient, canonical_difference, linear_strand)
from .solve import (NotZeroDimensional, point_over_extension, slice_to_points, solve_graded_piece,
                    solve_projective)


class RankMismatch(ValueError):
    """The syzygy does not have the rank of a scrollar syzygy."""


class LiftFailed(RuntimeError):
    """No second row of linear forms completes the scroll matrix."""


class EmptyLocus(ValueError):
    """The scrollar locus has no points."""


class SearchBudgetExceeded(RuntimeError):
    """The minor computation would exceed the configured budget."""


class NotAnRNC(ValueError):
    """Input is not the ideal of a rational normal curve."""


class NotGoneric(ValueError):
    """The last linear Betti number rules out the fast path."""


class PlaneQuintic(ValueError):
    """Genus 6, colength 1 and no rational normal curve of syzygies: a smooth plane quintic."""


class ConjectureCounterexample(ValueError):
    """Betti numbers say goneric but the syzygy locus is not a rational normal curve."""


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, bounds=None):
        super().__init__(msg)
        self.bounds = bounds


# -- data -------------------------------------------------------------------------------

@dataclass
class SyzygyPoint:
    coordinates: tuple
    p: int
    field: Field
    rank: Optional[int] = None
    multiplicity: int = 1


@dataclass
class ScrollModel:
    """Scroll cut out by the 2x2 minors of ``phi`` (2 x (p+1) linear forms)."""

    phi: GradedMap
    minor_ideal: List[Poly]
    p: int
    structure_map: Tuple[Poly, Poly]
    scroll_type: Optional[List[int]] = None

    @property
    def codim(self) -> int:
        return self.phi.ncols - 1

    @property
    def degree(self) -> int:
        return self.phi.ncols


@dataclass
class LocusResult:
    ring: PolyRing
    ideal: List[Poly]
    dim: int
    degree: int


@dataclass
class GonalMap:
    gonality: int
    num: Poly
    den: Poly
    path: str
    certificate: Dict = field(default_factory=dict)
    scroll: Optional[ScrollModel] = None
    plane_num: Optional[Poly] = None
    plane_den: Optional[Poly] = None

    def to_json(self) -> dict:
        out = {"gonality": self.gonality,
               "map": {"num": str(self.num), "den": str(self.den)},
               "path": self.path,
               "certificate": self.certificate}
        if self.num.ring.field.degree > 1:
            out["field"] = str(self.num.ring.field)
        if self.plane_num is not None:
            out["plane_map"] = {"num": str(self.plane_num), "den": str(self.plane_den)}
        if self.scroll is not None:
            out["scroll_betti"] = scroll_betti_row(self.scroll.codim)
        return out


# -- the flip -----------------------------------------------------------------------------

def _coefficient_tensor(psi: GradedMap) -> List[List[list]]:
    g = psi.ring.nvars
    return [[linear_coefficients(p, g) if p else [psi.ring.field.zero] * g for p in row] for row in psi.entries]


def flip_bilinear(psi: GradedMap, y_ring: Optional[PolyRing] = None) -> GradedMap:
    """``Psi(y)`` with ``psi(x) y = Psi(y) x``: rows of ``psi`` by ``g`` columns, linear in ``y``."""
    F = psi.ring.field
    g = psi.ring.nvars
    beta = psi.ncols
    Y = y_ring or PolyRing(F, beta, [f"y{j}" for j in range(beta)])
    T = _coefficient_tensor(psi)
    rows = []
    for i in range(psi.nrows):
        row = []
        for k in range(g):
            terms = {}
            for j in range(beta):
                c = T[i][j][k]
                if not F.is_zero(c):
                    e = [0] * beta
                    e[j] = 1
                    terms[tuple(e)] = c
            row.append(Poly(Y, terms))
        rows.append(row)
    return GradedMap(Y, [1] * g, [0] * psi.nrows, rows)


def evaluate_flip(psi: GradedMap, y: Sequence, field: Optional[Field] = None) -> list:
    """Scalar matrix ``Psi(y)`` (rows of ``psi`` by ``g``)."""
    F = field or psi.ring.field
    T = _coefficient_tensor(psi)
    g = psi.ring.nvars
    out = []
    for i in range(psi.nrows):
        row = [F.zero] * g
        for j, yj in enumerate(y):
            if F.is_zero(yj):
                continue
            for k, c in enumerate(T[i][j]):
                if c:
                    row[k] = F.add(row[k], F.mul(F.convert(c), yj))
        out.append(row)
    return out


def syzygy_rank(point: SyzygyPoint | Sequence, psi: GradedMap) -> int:
    """Rank of ``Psi_p`` at the point (number of independent linear forms in the syzygy)."""
    if isinstance(point, SyzygyPoint):
        y, F = point.coordinates, point.field
    else:
        y, F = point, psi.ring.field
    return linalg.rank(evaluate_flip(psi, y, F), F)


# -- minors ------------------------------------------------------------------------------------

def _det(entries: List[List[Poly]], ring: PolyRing) -> Poly:
    """Determinant by Laplace expansion with memoized column subsets."""
    k = len(entries)
    memo: Dict[Tuple[int, int], Poly] = {}

    def minor(r: int, mask: int) -> Poly:
        if r == k:
            return ring.one()
        key = (r, mask)
        if key in memo:
            return memo[key]
        acc = ring.zero()
        sign = 1
        for c in range(k):
            if mask >> c & 1:
                continue
            a = entries[r][c]
            if a:
                sub = minor(r + 1, mask | (1 << c))
                if sub:
                    t = a * sub
                    acc = acc + t if sign > 0 else acc - t
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, 0)


def _combine_rows(M: GradedMap, coeffs: List[list]) -> List[List[Poly]]:
    F = M.ring.field
    out = []
    for c in coeffs:
        row = []
        for j in range(M.ncols):
            acc = M.ring.zero()
            for i, ci in enumerate(c):
                if not F.is_zero(ci) and M.entries[i][j]:
                    acc = acc + M.entries[i][j].scale(ci)
            row.append(acc)
        out.append(row)
    return out


def determinantal_ideal(M: GradedMap, k: int, seed: int = 0, exact_limit: int = 4000,
                        budget: int = 200000) -> List[Poly]:
    """Basis of the span of the ``k x k`` minors of a matrix of linear forms.

    Small cases enumerate every minor; larger ones draw seeded random compressions
    ``A M B`` (each a combination of minors) until the span stops growing.
    """
    ring = M.ring
    F = ring.field
    m, n = M.nrows, M.ncols
    if k > min(m, n):
        return []
    total = comb(m, k) * comb(n, k)
    nm = len(monomials(ring.nvars, k))
    rows_vec: List[list] = []
    if total <= exact_limit:
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                d = _det([[M.entries[i][j] for j in C] for i in R], ring)
                if d:
                    rows_vec.append(d.to_vector(k))
        basis = linalg.rref(rows_vec, F, nm)[0] if rows_vec else []
        return [ring.from_vector(v, k) for v in basis]
    if F.is_prime_field and F.p < 2 ** 31:
        if nm > budget:
            raise SearchBudgetExceeded(f"{nm} monomials of degree {k} exceed the budget")
        return [ring.from_vector(v, k) for v in _minor_span_modular(M, k, seed)]
    if nm * k * (2 ** k) > budget * 50:
        raise SearchBudgetExceeded(f"{total} minors of size {k} in {ring.nvars} variables exceed the budget")
    rng = random.Random(seed)
    span = linalg.SpanTracker(F, nm)
    stale = 0
    while stale < 4 and len(span.kept) < nm:
        A = [[F.random_element(rng, 1000) for _ in range(m)] for _ in range(k)]
        B = [[F.random_element(rng, 1000) for _ in range(k)] for _ in range(n)]
        rowsA = _combine_rows(M, A)                 # k x n
        sq = [[sum((rowsA[i][j].scale(B[j][c]) for j in range(n) if rowsA[i][j] and not F.is_zero(B[j][c])),
                   ring.zero()) for c in range(k)] for i in range(k)]
        d = _det(sq, ring)
        if d.is_zero():
            stale += 1
            continue
        stale = 0 if span.add(d.to_vector(k)) else stale + 1
    return [ring.from_vector(v, k) for v in span.basis()]


def _powmod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    return out


def _batched_det(X: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod ``p`` of a stack of square matrices, without per-entry division."""
    X = X.copy()
    n, k, _ = X.shape
    top = np.ones(n, dtype=np.int64)
    scale = np.ones(n, dtype=np.int64)
    stuck = np.zeros(n, dtype=bool)
    for r in range(k):
        piv = X[:, r, r]
        stuck |= piv == 0
        top = top * piv % p
        if r + 1 < k:
            X[:, r + 1:, :] = (X[:, r + 1:, :] * piv[:, None, None]
                               - X[:, r + 1:, r:r + 1] * X[:, r:r + 1, :]) % p
            scale = scale * _powmod(piv, k - r - 1, p) % p
    return top * _powmod(scale, p - 2, p) % p, stuck


def _minor_span_modular(M: GradedMap, k: int, seed: int) -> List[list]:
    """Span of the ``k``-minors over a prime field: compressed minors evaluated at sample points, then interpolated."""
    ring = M.ring
    F = ring.field
    p = F.p
    n = ring.nvars
    mons = monomials(n, k)
    nm = len(mons)
    T = np.array(_coefficient_tensor(M), dtype=np.int64)          # rows x cols x vars
    exps = np.array(mons, dtype=np.int64)
    gen = np.random.default_rng(seed)
    while True:
        pts = gen.integers(1, p, size=(nm, n), dtype=np.int64)
        V = np.ones((nm, nm), dtype=np.int64)
        for v in range(n):
            for e in range(1, k + 1):
                V = np.where(exps[None, :, v] == e, V * _powmod(pts[:, v], e, p)[:, None] % p, V)
        Vf = flint.nmod_mat(V.tolist(), p)
        if Vf.rank() == nm:
            break
    Vinv = Vf.inv()
    rows: List[list] = []
    rank = 0
    batch = 24
    while rank < nm:
        evals = []
        for _ in range(batch):
            A = gen.integers(0, p, size=(k, M.nrows), dtype=np.int64)
            B = gen.integers(0, p, size=(M.ncols, k), dtype=np.int64)
            AT = np.einsum("ai,ijv->ajv", A, T) % p
            ATB = np.einsum("ajv,jb->abv", AT, B) % p
            X = np.einsum("abv,tv->tab", ATB, pts) % p
            dets, stuck = _batched_det(X, p)
            for t in np.nonzero(stuck)[0]:
                dets[t] = int(flint.nmod_mat(X[t].tolist(), p).det())
            evals.append(dets.tolist())
        coeffs = flint.nmod_mat(evals, p) * Vinv.transpose()
        stacked = flint.nmod_mat(rows + coeffs.tolist(), p) if rows else coeffs
        R, r = stacked.rref()
        if r == rank:
            break
        rows = [[int(x) for x in row] for row in R.tolist()[:r]]
        rank = r
    return [[F.convert(x) for x in row] for row in rows]


def annihilator_in_degree(M: GradedMap, d: int) -> List[Poly]:
    """Degree-``d`` forms ``f`` with ``f * e_i`` in the column span of ``M`` (linear entries) for every ``i``."""
    ring = M.ring
    F = ring.field
    n = ring.nvars
    r = M.nrows
    mons_d = monomials(n, d)
    idx = monomial_index(n, d)
    N = len(mons_d)
    img = []
    for j in range(M.ncols):
        for mu in monomials(n, d - 1):
            v = [F.zero] * (r * N)
            for i in range(r):
                p = M.entries[i][j]
                if not p:
                    continue
                for e, c in p.terms.items():
                    k = i * N + idx[tuple(a + b for a, b in zip(e, mu))]
                    v[k] = F.add(v[k], c)
            img.append(v)
    R, piv = linalg.rref(img, F, r * N) if img else ([], [])
    pivset = set(piv)
    free = [k for k in range(r * N) if k not in pivset]
    fpos = {k: t for t, k in enumerate(free)}
    # f e_i mod image: coordinates on the free columns
    conds = [[F.zero] * N for _ in range(r * len(free))]
    for a in range(N):
        for i in range(r):
            col = i * N + a
            # reduce the unit vector e_col by the rref rows
            red = [F.zero] * (r * N)
            red[col] = F.one
            if col in pivset:
                rr = R[piv.index(col)]
                red = [F.neg(x) for x in rr]
                red[col] = F.zero
            for k, x in enumerate(red):
                if k in fpos and not F.is_zero(x):
                    conds[i * len(free) + fpos[k]][a] = F.add(conds[i * len(free) + fpos[k]][a], x)
    ker = linalg.nullspace(conds, F, N)
    return [ring.from_vector(v, d) for v in ker]


def scrollar_locus(psi: GradedMap, p: int, seed: int = 0, exact_limit: int = 4000) -> LocusResult:
    """Locus where ``Psi_p`` has rank at most ``p+1``, cut by its ``(p+2)``-minors."""
    Psi = flip_bilinear(psi)
    J = determinantal_ideal(Psi, p + 2, seed, exact_limit)
    if not J:
        return LocusResult(Psi.ring, [], Psi.ring.nvars - 1, 1)
    dim, deg = hilbert_data(groebner_basis(J, Psi.ring))
    return LocusResult(Psi.ring, J, dim, deg)


def point_on_locus(locus: LocusResult, p: int, seed: int = 0, attempts: int = 4,
                   allow_extension: bool = True) -> SyzygyPoint:
    """A point of the locus from seeded linear slices, over a small extension when no rational one turns up."""
    if locus.dim < 0:
        raise EmptyLocus("scrollar locus is empty")
    ring = locus.ring
    F = ring.field
    fallback = None
    for a in range(attempts):
        rng = random.Random(seed * 1000 + a)
        cuts = [ring.linear_form([F.random_element(rng, 40) for _ in range(ring.nvars)]) for _ in range(locus.dim)]
        eqs = list(locus.ideal) + cuts
        try:
            res = solve_projective(eqs, ring, seed * 1000 + a)
        except NotZeroDimensional:
            continue
        if res.points:
            return SyzygyPoint(res.points[0], p, F)
        if fallback is None and res.other_degrees:
            fallback = (eqs, seed * 1000 + a, min(res.other_degrees))
    if allow_extension and fallback is not None:
        eqs, s, deg = fallback
        E, pt = point_over_extension(eqs, ring, s, max_degree=deg)
        return SyzygyPoint(pt, p, E)
    raise EmptyLocus("no point found on the scrollar locus")


# -- Algorithm 1: from a scrollar syzygy to the scroll ---------------------------------------

def _lift_ring(ring: PolyRing, F: Field) -> PolyRing:
    return ring if ring.field == F else ring.with_field(F)


def phi_from_syzygy(point: SyzygyPoint, psi: GradedMap, ideal: Sequence[Poly], seed: int = 0) -> ScrollModel:
    """Scroll matrix from a scrollar syzygy: its linear forms give one row, a linear solve the other."""
    F = point.field
    base = psi.ring
    ring = _lift_ring(base, F)
    g = ring.nvars
    Psi = evaluate_flip(psi, point.coordinates, F)
    V = linalg.row_basis(Psi, F, g)
    p = point.p
    if len(V) != p + 1:
        raise RankMismatch(f"syzygy has rank {len(V)}, a scrollar syzygy in L_{p} has rank {p + 1}")
    point.rank = len(V)
    ls = [ring.linear_form(v) for v in V]
    quads = [q.change_ring(ring) if ring is not base else q for q in ideal if q.degree() == 2]
    Q = GradedQuotient(ring, quads, 2)
    # unknowns u[a][k]: m_a = sum_k u[a][k] x_k; conditions l_i m_j - l_j m_i = 0 in (S/I)_2
    prod = {}
    for a in range(p + 1):
        for k in range(g):
            prod[a, k] = Q.normal_form_vector((ls[a] * ring.var(k)).to_vector(2), 2)
    width = len(Q.standard[2])
    nunk = (p + 1) * g
    rows = []
    for i, j in combinations(range(p + 1), 2):
        block = [[F.zero] * nunk for _ in range(width)]
        for k in range(g):
            for t in range(width):
                block[t][j * g + k] = F.add(block[t][j * g + k], prod[i, k][t])
                block[t][i * g + k] = F.sub(block[t][i * g + k], prod[j, k][t])
        rows.extend(block)
    sols = linalg.nullspace(rows, F, nunk)
    trivial = [x for v in V for x in v]
    nontrivial = [s for s in sols if linalg.rank([trivial, s], F, nunk) == 2]
    if not nontrivial:
        raise LiftFailed("no second row: the syzygy scheme is not a scroll")
    rng = random.Random(seed)
    if len(sols) > 2:
        pick = [F.zero] * nunk
        for s in sols:
            c = F.random_element(rng, 1000)
            pick = [F.add(x, F.mul(c, y)) for x, y in zip(pick, s)]
    else:
        pick = nontrivial[0]
    ms = [ring.linear_form(pick[a * g:(a + 1) * g]) for a in range(p + 1)]
    phi = GradedMap(ring, [1] * (p + 1), [0, 0], [ls, ms])
    minors = [ls[i] * ms[j] - ls[j] * ms[i] for i, j in combinations(range(p + 1), 2)]
    minors = [f for f in minors if not f.is_zero()]
    return ScrollModel(phi, minors, p, (ls[0], ms[0]))


def scroll_of_pencil(C: CanonicalModel, num: Poly, den: Poly) -> ScrollModel:
    """Scroll swept by the spans of the fibers of a known pencil ``num/den`` on ``C``.

    Its matrix has the columns ``(u, v)`` of linear forms with ``u*den = v*num`` on ``C``.
    """
    ring = C.ring
    F = ring.field
    g = ring.nvars
    Q = GradedQuotient(ring, C.quadrics(), 2)
    cols = []
    for k in range(g):
        cols.append(Q.normal_form_vector((ring.var(k) * den).to_vector(2), 2))
    for k in range(g):
        cols.append([F.neg(x) for x in Q.normal_form_vector((ring.var(k) * num).to_vector(2), 2)])
    sols = linalg.nullspace(linalg.transpose(cols), F, 2 * g)
    if len(sols) < 2:
        raise LiftFailed("the pencil spans no scroll")
    us = [ring.linear_form(v[:g]) for v in sols]
    vs = [ring.linear_form(v[g:]) for v in sols]
    phi = GradedMap(ring, [1] * len(sols), [0, 0], [us, vs])
    minors = [us[i] * vs[j] - us[j] * vs[i] for i, j in combinations(range(len(sols)), 2)]
    minors = linalg.row_basis([f.to_vector(2) for f in minors if not f.is_zero()], F)
    return ScrollModel(phi, [ring.from_vector(v, 2) for v in minors], len(sols) - 1, (num, den))


def is_one_generic(phi: GradedMap, seed: int = 0, trials: int = 3) -> bool:
    """No generalized row of the 2 x k matrix has dependent entries (over the algebraic closure)."""
    ring = phi.ring
    F = ring.field
    g = ring.nvars
    k = phi.ncols
    A0 = [linear_coefficients(p, g) for p in phi.entries[0]]   # k x g
    A1 = [linear_coefficients(p, g) for p in phi.entries[1]]
    if linalg.rank(A1, F, g) < k:
        return False          # the row (0:1) is degenerate
    rng = random.Random(seed)
    pts = [F.convert(i + 1) for i in range(k + 1)]
    gcd = None
    for _ in range(trials):
        B = [[F.random_element(rng, 1000) for _ in range(k)] for _ in range(g)]
        A0B = linalg.matmul(A0, B, F)
        A1B = linalg.matmul(A1, B, F)
        vals = []
        for t in pts:
            M = [[F.add(a, F.mul(t, b)) for a, b in zip(r0, r1)] for r0, r1 in zip(A0B, A1B)]
            vals.append(linalg.det(M, F))
        poly = univariate.interpolate(F, pts, vals)
        gcd = poly if gcd is None else univariate.gcd(F, gcd, poly)
        if gcd is not None and len(univariate.trim(F, gcd)) == 1:
            return True
    return gcd is not None and len(univariate.trim(F, gcd)) == 1


def scroll_hilbert_ok(scroll: ScrollModel) -> bool:
    return hilbert_data(groebner_basis(scroll.minor_ideal, scroll.phi.ring)) == \
        (scroll.phi.ring.nvars - 1 - scroll.codim, scroll.degree)


# -- rational normal curves -----------------------------------------------------------------

@dataclass
class RNCParametrization:
    forms: List[Poly]          # m+1 binary forms of degree m in (s, t)
    phi: Optional[GradedMap]
    ring: PolyRing             # the (s, t) ring

    def point(self, s, t) -> tuple:
        return tuple(f.evaluate([s, t]) for f in self.forms)


def _conic_point(Q: Poly, ring: PolyRing, seed: int) -> SyzygyPoint:
    res = LocusResult(ring, [Q], 1, 2)
    return point_on_locus(res, 1, seed, attempts=20)


def locus_by_annihilator(psi: GradedMap, max_degree: int = 3) -> List[Poly]:
    """Low-degree part of ``Ann(coker Psi^T)``, the ideal of the rank-drop locus."""
    Psi = flip_bilinear(psi)
    F = psi.ring.field
    g = psi.ring.nvars
    coeff_rows = [v for row in _coefficient_tensor(psi) for v in row if any(not F.is_zero(c) for c in v)]
    _, piv = linalg.rref(coeff_rows, F, g)
    if len(piv) < g:
        # a cone: only the pivot columns matter, the vertex lies in every kernel
        Psi = GradedMap(Psi.ring, [1] * len(piv), Psi.target_twists,
                        [[row[k] for k in piv] for row in Psi.entries])
    PsiT = Psi.transpose()
    PsiT = GradedMap(Psi.ring, [1] * PsiT.ncols, [0] * PsiT.nrows, PsiT.entries)
    gens: List[Poly] = []
    for d in range(1, max_degree + 1):
        part = annihilator_in_degree(PsiT, d)
        if part:
            gens = part
            break
    return gens


def rnc_point(ideal: Sequence[Poly], ring: PolyRing, seed: int = 0) -> SyzygyPoint:
    """A point on a rational normal curve of degree ``nvars - 1`` via iterated descent."""
    m = ring.nvars - 1
    F = ring.field
    if m == 0:
        return SyzygyPoint((F.one,), 0, F)
    if m == 1:
        return SyzygyPoint((F.one, F.zero), 0, F)
    if m == 2:
        quad = [f for f in ideal if f.degree() == 2]
        if len(quad) != 1:
            raise NotAnRNC("a conic needs exactly one quadric")
        return _conic_point(quad[0], ring, seed)
    par = rnc_parametrize(ideal, ring, seed)
    return SyzygyPoint(par.point(F.one, F.zero), 0, par.ring.field)


def rnc_parametrize(ideal: Sequence[Poly], ring: PolyRing, seed: int = 0) -> RNCParametrization:
    """Binary forms of degree ``m`` parametrizing a rational normal curve in ``P^m``."""
    m = ring.nvars - 1
    F = ring.field
    st = PolyRing(F, 2, ["s", "t"])
    s, t = st.gens()
    if m == 1:
        return RNCParametrization([s, t], None, st)
    quads = [f for f in ideal if not f.is_zero()]
    if m == 2:
        return _conic_parametrize(quads[0], ring, rnc_point(quads, ring, seed))
    strand = linear_strand(quads, ring, upto=m - 1)
    if len(strand) < m - 1 or strand[m - 2].ncols != m - 1:
        raise NotAnRNC(f"linear strand {[x.ncols for x in strand]} is not that of a degree-{m} curve")
    psi = strand[m - 2]
    p = m - 1
    J = locus_by_annihilator(psi)
    Yring = flip_bilinear(psi).ring
    if p - 1 <= 1:
        y = (F.one,) if p == 1 else (F.one, F.zero)
        ypt = SyzygyPoint(y, p, F)
    else:
        if not J:
            raise NotAnRNC("no equations for the syzygy curve")
        ypt = rnc_point(J, Yring, seed)
        ypt = SyzygyPoint(ypt.coordinates, p, ypt.field)
    scroll = phi_from_syzygy(ypt, psi, quads, seed)
    return _parametrize_from_phi(scroll.phi, st if ypt.field == F else PolyRing(ypt.field, 2, ["s", "t"]))


def _parametrize_from_phi(phi: GradedMap, st: PolyRing) -> RNCParametrization:
    """Kernel of ``s*row0 + t*row1`` by signed maximal minors, interpolated in ``t``."""
    ring = phi.ring
    F = ring.field
    g = ring.nvars
    m = phi.ncols
    A0 = [linear_coefficients(p, g) for p in phi.entries[0]]
    A1 = [linear_coefficients(p, g) for p in phi.entries[1]]
    pts = [F.convert(i) for i in range(m + 1)]
    vals = [[] for _ in range(g)]
    for tv in pts:
        N = [[F.add(a, F.mul(tv, b)) for a, b in zip(r0, r1)] for r0, r1 in zip(A0, A1)]
        for i in range(g):
            sub = [row[:i] + row[i + 1:] for row in N]
            d = linalg.det(sub, F)
            vals[i].append(d if i % 2 == 0 else F.neg(d))
    forms = []
    for i in range(g):
        f = univariate.interpolate(F, pts, vals[i])
        terms = {}
        for k, c in enumerate(f):
            if not F.is_zero(c):
                terms[(m - k, k)] = c
        forms.append(Poly(st, terms))
    return RNCParametrization(forms, phi, st)


def _conic_parametrize(Q: Poly, ring: PolyRing, pt: SyzygyPoint) -> RNCParametrization:
    """Lines through a point of the conic: second intersection as quadratic forms."""
    E = pt.field
    R = _lift_ring(ring, E)
    Qe = Q.change_ring(R) if R is not ring else Q
    P = list(pt.coordinates)
    st = PolyRing(E, 2, ["s", "t"])
    # pick two points U, W spanning a line not through P; the line P + (s U + t W)
    U, W = _complement_points(P, E)
    # Q(P + lam*X) = lam*(2 B(P, X)) + lam^2 Q(X) -> residual point P*Q(X) - 2B(P,X)*X
    s, t = st.gens()
    Xs = [st.const(U[i]) * s + st.const(W[i]) * t for i in range(3)]
    QX = Qe.substitute(Xs)
    grad = [Qe.derivative(i).evaluate(P) for i in range(3)]
    BPX = sum((Xs[i].scale(grad[i]) for i in range(3)), st.zero())  # = 2 B(P, X)
    forms = [QX.scale(P[i]) - BPX * Xs[i] for i in range(3)]
    return RNCParametrization(forms, None, st)


def _complement_points(P, F):
    basis = [[F.one if i == j else F.zero for i in range(3)] for j in range(3)]
    pivot = next(i for i in range(3) if not F.is_zero(P[i]))
    others = [b for k, b in enumerate(basis) if k != pivot]
    return others[0], others[1]


def scroll_check(phi: GradedMap, seed: int = 0, samples: int = 10) -> dict:
    """Invariants of the scroll of a 1-generic ``2 x (f+1)`` matrix, with the expected values alongside."""
    ring = phi.ring
    F = ring.field
    n = ring.nvars
    f = phi.ncols - 1
    ideal = determinantal_ideal(phi, 2, seed)
    dim, deg = hilbert_data(groebner_basis(ideal, ring))
    strand = linear_strand(ideal, ring)
    row = [m.ncols for m in strand]
    psi = strand[-1]
    if f > 2:
        J = locus_by_annihilator(psi)
        jd = hilbert_data(groebner_basis(J, flip_bilinear(psi).ring)) if J else (-1, 0)
    else:
        jd = (1, 1)                     # two syzygies: the locus is the whole line
    span = linalg.rank([linear_coefficients(p, n) for r in phi.entries for p in r if p], F, n)
    rng = random.Random(seed)
    # for f = 2 every syzygy is scrollar, so there is nothing off the locus to sample
    ranks = [syzygy_rank([F.random_element(rng, 1000) for _ in range(psi.ncols)], psi)
             for _ in range(samples)] if f > 2 else []
    return {"f": f, "codim": n - 1 - dim, "degree": deg, "betti_row": row,
            "expected_row": scroll_betti_row(f), "rnc_degree": jd[1] if jd[0] == 1 else None,
            "vertex_dim": n - 1 - span, "syzygy_ranks": ranks, "expected_rank": span,
            "ok": (n - 1 - dim == f and deg == f + 1 and row == scroll_betti_row(f)
                   and jd == (1, f - 1) and all(r == span for r in ranks))}


# -- Algorithm 4 and the search ---------------------------------------------------------------

@dataclass
class StrandData:
    strand: List[GradedMap]
    linear: List[int]                  # beta_{i,i+1} for i = 1..len
    genus: int

    def beta_quadratic(self, i: int) -> int:
        """``beta_{i,i+2}`` from the linear row and the Hilbert-function identity."""
        b_next = self.linear[i] if i < len(self.linear) else 0       # beta_{i+1,i+2}
        return b_next - canonical_difference(self.genus, i + 1)

    @property
    def colength(self) -> int:
        g = self.genus
        for i in range(1, g - 1):
            if self.beta_quadratic(i):
                return i
        return g - 2

    def betti_table(self) -> BettiTable:
        g = self.genus
        ent = {(0, 0): 1, (g - 2, g + 1): 1}
        for i, b in enumerate(self.linear, 1):
            ent[(i, i + 1)] = b
        for i in range(1, g - 1):
            q = self.beta_quadratic(i)
            if q:
                ent[(i, i + 2)] = q
        return BettiTable(ent, g)


def strand_data(C: CanonicalModel) -> StrandData:
    st = linear_strand(C.ideal, C.ring)
    return StrandData(st, [m.ncols for m in st], C.genus)


def _betti_guard(data: StrandData, d: int) -> None:
    g = data.genus
    p = g - d
    have = data.linear[p - 1] if 0 < p <= len(data.linear) else 0
    if have < g - d:
        raise ConjectureCounterexample(f"beta_{{{p},{p + 1}}} = {have} < g - d = {g - d}")


def goneric_pipeline(C: CanonicalModel, seed: int = 0, data: Optional[StrandData] = None) -> GonalMap:
    """Gonal map of a goneric curve from the unique rational normal curve of scrollar syzygies."""
    g = C.genus
    data = data or strand_data(C)
    ell = data.colength
    p = g - 2 - ell
    if p < 1 or p > len(data.linear) or data.linear[p - 1] != p:
        have = data.linear[p - 1] if 0 < p <= len(data.linear) else 0
        raise NotGoneric(f"beta_{{{p},{p + 1}}} = {have}, goneric curves have {p}")
    psi = data.strand[p - 1]
    J = locus_by_annihilator(psi)
    Yring = flip_bilinear(psi).ring
    if p == 1:
        ypt = SyzygyPoint((C.field.one,), 1, C.field)
        dimdeg = (0, 1)
    else:
        dimdeg = hilbert_data(groebner_basis(J, Yring)) if J else (p - 1, 1)
        if dimdeg != (1, p - 1) and not (p == 2 and dimdeg == (1, 1)):
            if (g, ell) == (6, 1):
                raise PlaneQuintic("syzygy locus is not a rational normal curve")
            raise ConjectureCounterexample(f"syzygy locus has Hilbert data {dimdeg}, expected (1, {p - 1})")
        ypt = rnc_point(J, Yring, seed) if p > 2 else SyzygyPoint((C.field.one, C.field.zero), p, C.field)
        ypt = SyzygyPoint(ypt.coordinates, p, ypt.field)
    scroll = phi_from_syzygy(ypt, psi, C.ideal, seed)
    num, den = scroll.structure_map
    d = map_degree(C.ideal, num, den, 2 * g - 2) if ypt.field == C.field else g - p
    cert = {"colength": ell, "p": p, "locus_hilbert": list(dimdeg), "map_degree": d,
            "one_generic": is_one_generic(scroll.phi, seed) if ypt.field == C.field else None}
    if d != ell + 2:
        raise ConjectureCounterexample(f"structure map has degree {d}, expected {ell + 2}")
    return GonalMap(d, num, den, "goneric", cert, scroll)


def curve_point(P: PlaneModel, seed: int = 0, attempts: int = 200) -> tuple:
    """A smooth rational point of a plane model, off the adjoint base locus."""
    R = P.ring
    F = R.field
    rng = random.Random(seed)
    for _ in range(attempts):
        a = F.random_element(rng, 50)
        # F(a, t, 1) as a univariate polynomial in t
        coeffs = [F.zero] * (P.degree + 1)
        for e, c in P.F.terms.items():
            coeffs[e[1]] = F.add(coeffs[e[1]], F.mul(c, F.pow(a, e[0])))
        for r in univariate.roots(F, coeffs):
            pt = (a, r, F.one)
            if all(F.is_zero(P.F.derivative(i).evaluate(pt)) for i in range(3)):
                continue
            return pt
    raise EmptyLocus("no rational point found on the plane model")


def scrollar_points_through(C: CanonicalModel, psi: GradedMap, p: int, w: Sequence, seed: int = 0) -> List[SyzygyPoint]:
    """Scrollar syzygies in ``L_p`` whose linear forms vanish at the curve point ``w``."""
    F = C.field
    T = _coefficient_tensor(psi)
    g = C.ring.nvars
    # psi(w): rows x beta
    Mw = [[F.sum(F.mul(c, wk) for c, wk in zip(T[i][j], w)) for j in range(psi.ncols)] for i in range(psi.nrows)]
    K = linalg.nullspace(Mw, F, psi.ncols)
    if not K:
        return []
    k = len(K)
    if k == 1:
        pt = SyzygyPoint(tuple(K[0]), p, F)
        return [pt] if syzygy_rank(pt, psi) == p + 1 else []
    # restrict Psi to the kernel: y = sum c_a K_a
    Cring = PolyRing(F, k, [f"c{a}" for a in range(k)])
    Psi = flip_bilinear(psi)
    images = []
    for j in range(psi.ncols):
        images.append(Cring.linear_form([K[a][j] for a in range(k)]))
    rows = [[e.substitute(images) if e else Cring.zero() for e in row] for row in Psi.entries]
    R = GradedMap(Cring, [1] * g, [0] * len(rows), rows)
    J = determinantal_ideal(R, p + 2, seed)
    res = solve_graded_piece([f.to_vector(p + 2) for f in J], Cring, p + 2, seed) if J else None
    if res is None:
        dim, _ = hilbert_data(groebner_basis(J, Cring)) if J else (k - 1, 1)
        if dim < 0:
            return []
        res = slice_to_points(J, Cring, dim, seed)[1] if dim > 0 else solve_projective(J, Cring, seed)
    out = []
    for c, mult in zip(res.points, res.multiplicities):
        y = tuple(F.sum(F.mul(c[a], K[a][j]) for a in range(k)) for j in range(psi.ncols))
        if syzygy_rank(y, psi) == p + 1:
            out.append(SyzygyPoint(y, p, F, p + 1, mult))
    return out


def scrollar_search(C: CanonicalModel, seed: int = 0, data: Optional[StrandData] = None,
                    exact_limit: int = 4000) -> Tuple[int, SyzygyPoint]:
    """Largest ``p`` with a scrollar syzygy, and one such syzygy."""
    g = C.genus
    data = data or strand_data(C)
    top = len(data.linear)
    low = g - gonality_upper_bound(g)
    plane_pt = None
    if C.plane is not None and C.back_map is not None:
        plane_pt = _canonical_point(C, seed)
    for p in range(top, max(low, 1) - 1, -1):
        psi = data.strand[p - 1]
        if p == 1:
            continue
        if plane_pt is not None:
            pts = scrollar_points_through(C, psi, p, plane_pt, seed)
            if pts:
                return p, pts[0]
            continue
        locus = scrollar_locus(psi, p, seed, exact_limit)
        if locus.dim >= 0:
            return p, point_on_locus(locus, p, seed)
    raise EmptyLocus("no scrollar syzygy found in the admissible range")


def _canonical_point(C: CanonicalModel, seed: int) -> tuple:
    F = C.field
    for k in range(50):
        pt = curve_point(C.plane, seed + k)
        w = tuple(a.evaluate(pt) for a in C.back_map)
        if any(not F.is_zero(x) for x in w):
            return w
    raise EmptyLocus("all sampled plane points are base points of the adjoints")


def gonal_map(model, seed: int = 0) -> GonalMap:
    """Gonality and a gonal map for a plane model, a canonical model or a hyperelliptic equation."""
    if isinstance(model, HyperellipticModel):
        R = PolyRing(model.field, 2, ["x", "z"])
        x, z = R.gens()
        return GonalMap(2, x, z, "hyperelliptic", {"genus": model.genus})
    C = canonical_ideal(model) if isinstance(model, PlaneModel) else model
    data = strand_data(C)
    g = C.genus
    ell = data.colength
    bounds = None
    if C.plane is not None and C.plane.adjoint_rule == "ordinary":
        from .curvein import delta_genus
        delta, _ = delta_genus(C.plane)
        bounds = plane_gonality_bounds(C.plane.degree, C.plane.max_multiplicity, delta)
    try:
        gm = goneric_pipeline(C, seed, data)
    except (NotGoneric, ConjectureCounterexample, PlaneQuintic) as exc:
        p, pt = scrollar_search(C, seed, data)
        scroll = phi_from_syzygy(pt, data.strand[p - 1], C.ideal, seed)
        num, den = scroll.structure_map
        d = map_degree(C.ideal, num, den, 2 * g - 2)
        gm = GonalMap(d, num, den, "search", {"colength": ell, "p": p, "map_degree": d,
                                              "fast_path": type(exc).__name__}, scroll)
    gm.certificate["clifford_window"] = clifford_window(ell)
    if bounds is not None:
        gm.certificate["plane_bounds"] = bounds.as_list()
    if C.back_map is not None:
        gm.plane_num = pullback_to_plane(C, gm.num)
        gm.plane_den = pullback_to_plane(C, gm.den)
    return gm


# -- comparing pencils --------------------------------------------------------------------------

def mobius_between(ideal: Sequence[Poly], first: Tuple[Poly, Poly], second: Tuple[Poly, Poly]) -> Optional[list]:
    """``[a, b, c, d]`` with ``first = (a*l + b*m) / (c*l + d*m)`` on the curve, where ``second = l/m``; linear pencils only."""
    l1, m1 = first
    l2, m2 = second
    ring = l1.ring
    F = ring.field
    I = [f if f.ring is ring else f.change_ring(ring) for f in ideal]
    Q = GradedQuotient(ring, [f for f in I if f.degree() == 2], 2)
    # l1 (c l2 + d m2) - m1 (a l2 + b m2) = 0 in (S/I)_2
    cols = [(m1 * l2), (m1 * m2), (l1 * l2), (l1 * m2)]
    vecs = [Q.normal_form_vector(p.to_vector(2), 2) for p in cols]
    signs = [F.neg(F.one), F.neg(F.one), F.one, F.one]
    width = len(vecs[0])
    M = [[F.mul(signs[k], vecs[k][t]) for k in range(4)] for t in range(width)]
    ker = linalg.nullspace(M, F, 4)
    if len(ker) != 1:
        return None
    a, b, c, d = ker[0]
    if F.is_zero(F.sub(F.mul(a, d), F.mul(b, c))):
        return None
    return [a, b, c, d]


def fiber_ideal(ideal: Sequence[Poly], num: Poly, den: Poly, value) -> GroebnerBasis:
    """Saturated ideal of the fiber ``num = value * den`` of a linear pencil (``value=None``: over infinity).

    Coordinates are changed so the fiber hyperplane is eliminated and the other
    pencil member becomes the last variable; saturating by it is then a division
    of the grevlex basis elements by their largest power of that variable.
    """
    ring = num.ring
    F = ring.field
    n = ring.nvars
    h = den if value is None else num - den.scale(value)
    other = num if value is None else den
    hv, ov = linear_coefficients(h, n), linear_coefficients(other, n)
    rows = [hv]
    for i in range(n):
        unit = [F.one if k == i else F.zero for k in range(n)]
        if linalg.rank(rows + [unit, ov], F, n) == len(rows) + 2:
            rows.append(unit)
        if len(rows) == n - 1:
            break
    rows.append(ov)
    inv = linalg.inverse(rows, F)                  # x = inv * y
    small = PolyRing(F, n - 1, [f"y{i}" for i in range(1, n)])
    ys = [small.zero()] + small.gens()
    images = [sum((ys[j].scale(inv[i][j]) for j in range(1, n) if not F.is_zero(inv[i][j])), small.zero())
              for i in range(n)]
    restricted = [f.substitute(images) for f in ideal]
    gb = groebner_basis([f for f in restricted if not f.is_zero()], small)
    last = n - 2
    saturated = []
    for g in gb.gens:
        k = min(e[last] for e in g.terms)
        saturated.append(Poly(small, {e[:last] + (e[last] - k,): c for e, c in g.terms.items()}))
    back = [ring.linear_form(rows[i]) for i in range(1, n)]
    return groebner_basis([h] + [g.substitute(back) for g in saturated], ring)


def fibers_agree(ideal: Sequence[Poly], first: Tuple[Poly, Poly], second: Tuple[Poly, Poly],
                 seed: int = 0, samples: int = 5) -> bool:
    """Do the two pencils have equal fibers (as ideals) at seeded values, after the Möbius matching?"""
    coeffs = mobius_between(ideal, first, second)
    if coeffs is None:
        return False
    a, b, c, d = coeffs
    ring = first[0].ring
    F = ring.field
    rng = random.Random(seed)
    checked = 0
    while checked < samples:
        lam = F.random_element(rng, 10 ** 4)
        den = F.sub(a, F.mul(c, lam))
        if F.is_zero(den):
            continue
        mu = F.div(F.sub(F.mul(d, lam), b), den)
        f1 = fiber_ideal(ideal, first[0], first[1], lam)
        f2 = fiber_ideal(ideal, second[0], second[1], mu)
        if f1 != f2:
            return False
        checked += 1
    return True
