"""Minimal graded free resolutions, Betti tables and linear strands.

Everything here is graded linear algebra: a homogeneous ideal is handled one
degree at a time, so the only heavy primitive is an exact rref.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from . import linalg
from .graded import GradedMap, free_basis, vector_to_column
from .poly import Poly, PolyRing, monomial_index, monomials, exp_add


class WindowTooSmall(ValueError):
    """The requested invariant is not visible in the computed Betti window."""


class ResolutionError(RuntimeError):
    """Internal consistency failure (expected Betti numbers not reproduced)."""


# -- Betti tables -------------------------------------------------------------

@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]``; zero entries are not stored."""

    entries: Dict[Tuple[int, int], int]
    genus: Optional[int] = None

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.entries.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def row(self, r: int) -> List[int]:
        """``[beta_{i,i+r} for i = 0..length]``."""
        return [self[(i, i + r)] for i in range(self.length + 1)]

    def rows(self) -> List[List[int]]:
        return [self.row(r) for r in range(self.regularity + 1)]

    def strand(self, r: int) -> List[int]:
        """Nonzero entries of row ``r`` with leading/trailing zeros dropped."""
        row = self.row(r)
        nz = [i for i, v in enumerate(row) if v]
        return row[nz[0]:nz[-1] + 1] if nz else []

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], genus: Optional[int] = None) -> "BettiTable":
        ent = {}
        for r, row in enumerate(rows):
            for i, v in enumerate(row):
                if v:
                    ent[(i, i + r)] = int(v)
        return cls(ent, genus)

    def to_json(self) -> dict:
        return {"genus": self.genus, "rows": self.rows()}

    def pretty(self) -> str:
        rows = self.rows()
        width = max((len(str(v)) for row in rows for v in row), default=1)
        lines = []
        for row in rows:
            lines.append("  ".join(("-" if v == 0 else str(v)).rjust(width) for v in row))
        return "\n".join(lines)

    def __str__(self):
        return self.pretty()


def linear_colength(table: BettiTable) -> int:
    """Smallest ``i >= 1`` with ``beta_{i,i+2} != 0``."""
    for i in range(1, table.length + 1):
        if table[(i, i + 2)]:
            return i
    raise WindowTooSmall("no quadratic-strand Betti number in the table")


def canonical_difference(g: int, i: int) -> int:
    """``beta_{i,i+1} - beta_{i-1,i+1}`` for a canonical curve of genus ``g``."""
    def c(k):
        return comb(g - 2, k) if 0 <= k <= g - 2 else 0
    return c(i - 2) - (g - 2) * c(i - 1) + (g - 2) * c(i) - c(i + 1)


def canonical_table_violations(table: BettiTable, g: int) -> List[str]:
    """Check the standard shape constraints of a canonical Betti table; empty means OK."""
    bad = []
    if table[(0, 0)] != 1:
        bad.append("beta_{0,0} != 1")
    if table.length != g - 2:
        bad.append(f"length {table.length} != g-2 = {g - 2}")
    if table[(g - 2, g + 1)] != 1:
        bad.append("last corner is not 1")
    for (i, j), v in table.entries.items():
        if (i, j) not in ((0, 0), (g - 2, g + 1)) and j - i not in (1, 2):
            bad.append(f"unexpected beta_{{{i},{j}}} = {v}")
    if table[(1, 2)] != comb(g - 2, 2):
        bad.append(f"beta_{{1,2}} = {table[(1, 2)]} != C(g-2,2)")
    for i in range(0, g - 1):
        if table[(i, i + 1)] != table[(g - 2 - i, g - i)]:
            bad.append(f"duality fails at i={i}")
    for i in range(1, g - 2):
        if table[(i, i + 1)] - table[(i - 1, i + 1)] != canonical_difference(g, i):
            bad.append(f"difference formula fails at i={i}")
    return bad


# -- graded pieces of quotient rings -------------------------------------------

def _flint_mat(rows, F, ncols):
    return linalg._to_flint(rows, F, ncols)


def _reduce_rows(K, R, piv, F):
    """Reduce each row of ``K`` by the rref rows ``R`` (pivot columns ``piv``)."""
    if not R or not K:
        return [list(r) for r in K]
    ncols = len(K[0])
    A = _flint_mat(K, F, ncols)
    if A is not None:
        sub = [[row[p] for p in piv] for row in K]
        S = _flint_mat(sub, F, len(piv))
        RR = _flint_mat(R, F, ncols)
        return linalg._from_flint(A - S * RR, F)
    out = []
    for row in K:
        row = list(row)
        for r, p in zip(R, piv):
            c = row[p]
            if not F.is_zero(c):
                row = [F.sub(x, F.mul(c, y)) for x, y in zip(row, r)]
        out.append(row)
    return out


def complement_rows(old: List[list], new: List[list], F, ncols: int) -> List[list]:
    """A basis of ``span(old) + span(new)`` modulo ``span(old)``, canonical (rref) form."""
    if not new:
        return []
    R, piv = linalg.rref(old, F, ncols) if old else ([], [])
    red = _reduce_rows(new, R, piv, F)
    rows, _ = linalg.rref(red, F, ncols)
    return rows


class GradedQuotient:
    """Degree-wise data of ``S/I``: rref of ``I_d`` and standard monomials."""

    def __init__(self, ring: PolyRing, gens: Sequence[Poly], maxdeg: int):
        self.ring = ring
        self.F = ring.field
        self.gens = [g for g in gens if not g.is_zero()]
        self.maxdeg = maxdeg
        self.rref: Dict[int, Tuple[list, list]] = {}
        self.standard: Dict[int, List[tuple]] = {}
        n = ring.nvars
        F = self.F
        prev: List[list] = []
        for d in range(maxdeg + 1):
            mons = monomials(n, d)
            idx = monomial_index(n, d)
            rows = []
            if d >= 1 and prev:
                pm = monomials(n, d - 1)
                for r in prev:
                    for v in range(n):
                        row = [F.zero] * len(mons)
                        for k, c in enumerate(r):
                            if not F.is_zero(c):
                                e = list(pm[k])
                                e[v] += 1
                                row[idx[tuple(e)]] = c
                        rows.append(row)
            for g in self.gens:
                if g.degree() == d:
                    rows.append(g.to_vector(d))
            R, piv = linalg.rref(rows, F, len(mons)) if rows else ([], [])
            self.rref[d] = (R, piv)
            ps = set(piv)
            self.standard[d] = [m for k, m in enumerate(mons) if k not in ps]
            prev = R

    def hilbert_function(self, d: int) -> int:
        return len(self.standard[d])

    def basis_of_ideal(self, d: int) -> List[Poly]:
        R, _ = self.rref[d]
        return [self.ring.from_vector(r, d) for r in R]

    def normal_form_vector(self, vec: list, d: int) -> list:
        """Coordinates of ``vec`` (monomial basis of degree d) on the standard monomials."""
        R, piv = self.rref[d]
        F = self.F
        v = list(vec)
        for r, p in zip(R, piv):
            c = v[p]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, r)]
        idx = monomial_index(self.ring.nvars, d)
        return [v[idx[m]] for m in self.standard[d]]

    def multiplication(self, var: int, d: int) -> list:
        """Matrix of ``x_var : (S/I)_d -> (S/I)_{d+1}`` on standard monomials (rows = target)."""
        F = self.F
        n = self.ring.nvars
        idx = monomial_index(n, d + 1)
        cols = []
        for m in self.standard[d]:
            e = list(m)
            e[var] += 1
            v = [F.zero] * len(idx)
            v[idx[tuple(e)]] = F.one
            cols.append(self.normal_form_vector(v, d + 1))
        return linalg.transpose(cols) if cols else [[] for _ in self.standard[d + 1]]


def _koszul_table(Q: GradedQuotient, maxdeg: int, max_i: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """``dim Tor_i(S/I, K)_j`` from the Koszul complex on ``(S/I)_{<= maxdeg}``."""
    F = Q.F
    n = Q.ring.nvars
    max_i = n if max_i is None else max_i
    mult = {(v, k): Q.multiplication(v, k) for k in range(maxdeg) for v in range(n)}
    dims = {k: Q.hilbert_function(k) for k in range(maxdeg + 1)}
    rank_cache: Dict[Tuple[int, int], int] = {}

    def rank_of(i, k):
        # d: wedge^i (x) A_k -> wedge^{i-1} (x) A_{k+1}
        if (i, k) in rank_cache:
            return rank_cache[(i, k)]
        if i == 0 or k + 1 > maxdeg or dims[k] == 0 or dims.get(k + 1, 0) == 0:
            rank_cache[(i, k)] = 0
            return 0
        src = list(combinations(range(n), i))
        tgt = {s: t for t, s in enumerate(combinations(range(n), i - 1))}
        a, b = dims[k], dims[k + 1]
        nrows, ncols = len(tgt) * b, len(src) * a
        M = [[F.zero] * ncols for _ in range(nrows)]
        for sidx, s in enumerate(src):
            for r, v in enumerate(s):
                t = tgt[s[:r] + s[r + 1:]]
                X = mult[(v, k)]
                sign = F.one if r % 2 == 0 else F.neg(F.one)
                for row in range(b):
                    xr = X[row]
                    for col in range(a):
                        c = xr[col]
                        if not F.is_zero(c):
                            M[t * b + row][sidx * a + col] = F.add(M[t * b + row][sidx * a + col], F.mul(sign, c))
        rk = linalg.rank(M, F, ncols)
        rank_cache[(i, k)] = rk
        return rk

    table = {}
    for i in range(0, min(max_i, n) + 1):
        for k in range(0, maxdeg + 1):
            if dims[k] == 0:
                continue
            dim_c = comb(n, i) * dims[k]
            ker = dim_c - rank_of(i, k)
            img = rank_of(i + 1, k - 1) if k >= 1 else 0
            b = ker - img
            if b:
                table[(i, i + k)] = b
    return table


def _generic_substitution(ring: PolyRing, k: int, rng: random.Random):
    """Substitute the last ``k`` variables by random linear forms in the others."""
    n = ring.nvars
    small = PolyRing(ring.field, n - k, ring.names[: n - k])
    F = ring.field
    images = list(small.gens())
    for _ in range(k):
        images.append(small.linear_form([F.random_element(rng, 20) for _ in range(n - k)]))
    return small, images


def betti_via_koszul(gens: Sequence[Poly], ring: Optional[PolyRing] = None, depth: Optional[int] = None,
                     maxdeg: Optional[int] = None, seed: int = 0, genus: Optional[int] = None) -> BettiTable:
    """Betti table of ``S/I`` from Koszul homology.

    With ``depth = k`` the ideal is first cut by ``k`` generic linear forms; the
    reduction is accepted only if the Hilbert functions agree with a regular
    sequence, otherwise :class:`ResolutionError` is raised.  ``depth=None``
    tries the largest value for which ``S/(I + linear forms)`` is Artinian.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or gens[0].ring
    n = ring.nvars
    rng = random.Random(seed)
    if depth is None:
        for k in range(n, -1, -1):
            try:
                return betti_via_koszul(gens, ring, k, maxdeg, seed, genus)
            except ResolutionError:
                continue
        raise ResolutionError("no Koszul reduction succeeded")
    k = depth
    if k:
        small, images = _generic_substitution(ring, k, rng)
        red = [g.substitute(images) for g in gens]
    else:
        small, red = ring, gens
    dmax = max(g.degree() for g in gens)
    cap = maxdeg if maxdeg is not None else dmax * (n - k) + 1
    top = None
    Q = None
    for D in range(dmax + 1, cap + 2):
        Q = GradedQuotient(small, red, D)
        if Q.hilbert_function(D) == 0:
            top = D
            break
    if top is None:
        if k == 0 and maxdeg is not None:
            part = _koszul_table(Q, maxdeg + 1)
            return BettiTable({(i, j): v for (i, j), v in part.items() if j - i <= maxdeg}, genus)
        raise ResolutionError("reduction is not Artinian within the degree cap")
    if k == 0:
        return BettiTable(_koszul_table(Q, top), genus)
    h = [Q.hilbert_function(d) for d in range(top + 1)]
    # regular-sequence check: HF(S/I)_d = sum_i h_i * C(d - i + k - 1, k - 1)
    full = GradedQuotient(ring, gens, top)
    for d in range(top + 1):
        expect = sum(h[i] * comb(d - i + k - 1, k - 1) for i in range(min(d, top) + 1))
        if full.hilbert_function(d) != expect:
            raise ResolutionError(f"linear forms are not a regular sequence (degree {d})")
    return BettiTable(_koszul_table(Q, top), genus)


def hilbert_data_by_reduction(gens: Sequence[Poly], ring: Optional[PolyRing] = None, seed: int = 0) -> Tuple[int, int]:
    """(projective dimension, degree) when ``S/I`` is Cohen-Macaulay, via Artinian reduction."""
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or gens[0].ring
    n = ring.nvars
    for k in range(n, 0, -1):
        rng = random.Random(seed)
        small, images = _generic_substitution(ring, k, rng)
        red = [g.substitute(images) for g in gens]
        dmax = max(g.degree() for g in gens)
        for D in range(dmax + 1, dmax * (n - k + 1) + 3):
            Q = GradedQuotient(small, red, D)
            if Q.hilbert_function(D) == 0:
                h = [Q.hilbert_function(d) for d in range(D + 1)]
                full = GradedQuotient(ring, gens, D)
                ok = all(full.hilbert_function(d) == sum(h[i] * comb(d - i + k - 1, k - 1) for i in range(min(d, D) + 1))
                         for d in range(D + 1))
                if ok:
                    return (k - 1, sum(h))
                break
    raise ResolutionError("ring is not Cohen-Macaulay under generic reduction")


# -- resolutions ----------------------------------------------------------------

@dataclass
class Resolution:
    """Differentials ``f_1 .. f_len`` with ``f_i : F_i -> F_{i-1}``."""

    ring: PolyRing
    differentials: List[GradedMap]
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.differentials)

    def twists(self, i: int) -> List[int]:
        if i == 0:
            return list(self.differentials[0].target_twists) if self.differentials else [0]
        return list(self.differentials[i - 1].source_twists)

    def betti_table(self, genus: Optional[int] = None) -> BettiTable:
        ent: Dict[Tuple[int, int], int] = {}
        for i in range(self.length + 1):
            for t in self.twists(i):
                ent[(i, t)] = ent.get((i, t), 0) + 1
        return BettiTable(ent, genus)

    def is_complex(self) -> bool:
        for a, b in zip(self.differentials, self.differentials[1:]):
            if not (a @ b).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.differentials)


def betti_table(R: Resolution, genus: Optional[int] = None) -> BettiTable:
    return R.betti_table(genus)


def _image_rows(cols: List[List[Poly]], col_degs: List[int], ring: PolyRing, twists: List[int], d: int):
    """Degree-``d`` span of the submodule generated by ``cols`` (each of degree col_degs)."""
    if not cols:
        return []
    G = GradedMap(ring, list(col_degs), list(twists), [list(r) for r in zip(*cols)])
    M = G.degree_matrix(d)
    return linalg.transpose(M) if M and M[0] else []


def minimal_free_resolution(gens: Sequence[Poly], ring: Optional[PolyRing] = None,
                            table: Optional[BettiTable] = None, max_degree: Optional[int] = None,
                            max_length: Optional[int] = None) -> Resolution:
    """Minimal free resolution of ``S/I`` computed degree by degree.

    The degrees to visit come from ``table`` (default: :func:`betti_via_koszul`);
    every degree is recomputed independently and the generator counts must
    reproduce the table.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or gens[0].ring
    F = ring.field
    n = ring.nvars
    if table is None:
        if max_degree is None:
            table = betti_via_koszul(gens, ring)
        else:
            table = None
    def degrees_at(i):
        if table is not None:
            return sorted(j for (ii, j) in table.entries if ii == i)
        return list(range(i, max_degree + 1))

    # F_1: minimal generators of I
    Q = GradedQuotient(ring, gens, max(g.degree() for g in gens))
    f1_cols: List[List[Poly]] = []
    f1_degs: List[int] = []
    for d in degrees_at(1):
        if d > max(g.degree() for g in gens):
            break
        old = _image_rows(f1_cols, f1_degs, ring, [0], d)
        R, _ = Q.rref[d]
        new = complement_rows(old, R, F, len(monomials(n, d)))
        for v in new:
            f1_cols.append([ring.from_vector(v, d)])
            f1_degs.append(d)
    diffs = [GradedMap(ring, f1_degs, [0], [[c[0] for c in f1_cols]])]
    if table is not None:
        _check_count(diffs[-1], table, 1)
    i = 1
    limit = max_length if max_length is not None else n
    while i < limit:
        prev = diffs[-1]
        twists = prev.source_twists
        cols: List[List[Poly]] = []
        degs: List[int] = []
        for d in degrees_at(i + 1):
            M = prev.degree_matrix(d)
            ncols = len(free_basis(n, twists, d))
            K = linalg.nullspace(M, F, ncols)
            if not K:
                continue
            old = _image_rows(cols, degs, ring, twists, d)
            new = complement_rows(old, K, F, ncols)
            for v in new:
                cols.append(vector_to_column(v, ring, twists, d))
                degs.append(d)
        if not cols:
            break
        nxt = GradedMap(ring, degs, list(twists), [list(r) for r in zip(*cols)])
        diffs.append(nxt)
        if table is not None:
            _check_count(nxt, table, i + 1)
        i += 1
    return Resolution(ring, diffs, True)


def _check_count(G: GradedMap, table: BettiTable, i: int):
    got: Dict[int, int] = {}
    for t in G.source_twists:
        got[t] = got.get(t, 0) + 1
    want = {j: v for (ii, j), v in table.entries.items() if ii == i}
    if got != want:
        raise ResolutionError(f"F_{i}: generator degrees {got} differ from Koszul table {want}")


# -- linear strand ------------------------------------------------------------------

def quadrics_of(gens: Sequence[Poly], ring: PolyRing) -> List[Poly]:
    """Basis (rref) of the degree-2 part of the ideal."""
    Q = GradedQuotient(ring, gens, 2)
    return Q.basis_of_ideal(2)


def linear_strand(gens: Sequence[Poly], ring: Optional[PolyRing] = None, upto: Optional[int] = None) -> List[GradedMap]:
    """``[psi_1, psi_2, ...]``: ``psi_1`` is the row of quadrics, ``psi_p`` (p >= 2)
    the ``beta_{p-1,p} x beta_{p,p+1}`` matrix of linear forms."""
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or gens[0].ring
    F = ring.field
    n = ring.nvars
    quads = quadrics_of(gens, ring)
    if not quads:
        return []
    strand = [GradedMap(ring, [2] * len(quads), [0], [quads])]
    p = 2
    while upto is None or p <= upto:
        prev = strand[-1]
        d = p + 1
        M = prev.degree_matrix(d)
        ncols = n * prev.ncols
        K = linalg.nullspace(M, F, ncols)
        if not K:
            break
        cols = [vector_to_column(v, ring, prev.source_twists, d) for v in K]
        strand.append(GradedMap(ring, [d] * len(cols), list(prev.source_twists), [list(r) for r in zip(*cols)]))
        p += 1
    return strand


def strand_betti(strand: List[GradedMap]) -> List[int]:
    return [m.ncols for m in strand]


# -- block decomposition --------------------------------------------------------------

@dataclass
class StrandBlocks:
    """``M_i = [[A_i, C_i], [0, B_i]]`` for each differential of a canonical resolution."""

    A: Dict[int, GradedMap] = field(default_factory=dict)
    B: Dict[int, GradedMap] = field(default_factory=dict)
    C: Dict[int, GradedMap] = field(default_factory=dict)
    linear_index: Dict[int, List[int]] = field(default_factory=dict)
    quadratic_index: Dict[int, List[int]] = field(default_factory=dict)


def strand_blocks(R: Resolution) -> StrandBlocks:
    """Split each ``F_i`` into its linear (twist i+1) and quadratic (twist i+2) parts."""
    out = StrandBlocks()

    def split(i):
        tw = R.twists(i)
        if i == 0:
            return list(range(len(tw))), []
        lin = [k for k, t in enumerate(tw) if t == i + 1]
        quad = [k for k, t in enumerate(tw) if t == i + 2]
        if len(lin) + len(quad) != len(tw) and i != R.length:
            raise ResolutionError(f"F_{i} has generators outside the two strands")
        if i == R.length:
            quad = [k for k in range(len(tw)) if k not in lin]
        return lin, quad

    for i in range(1, R.length + 1):
        M = R.differentials[i - 1]
        lin_s, quad_s = split(i)
        lin_t, quad_t = split(i - 1)
        out.linear_index[i] = lin_s
        out.quadratic_index[i] = quad_s
        out.A[i] = M.submatrix(lin_t, lin_s)
        out.C[i] = M.submatrix(lin_t, quad_s)
        out.B[i] = M.submatrix(quad_t, quad_s)
        if lin_s and quad_t and not M.submatrix(quad_t, lin_s).is_zero():
            raise ResolutionError(f"lower-left block of M_{i} is nonzero")
    return out
