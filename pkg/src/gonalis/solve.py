"""Points of zero-dimensional projective schemes via multiplication matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import linalg, univariate
from .fields import ExtensionField, Field
from .groebner import groebner_basis, standard_monomials
from .poly import Poly, PolyRing, monomial_index, monomials


class NotZeroDimensional(ValueError):
    """The sliced scheme still has positive dimension."""


@dataclass
class PointSet:
    """Rational points found, plus the degrees of the remaining (non-rational) residue factors."""

    points: List[tuple]
    multiplicities: List[int]
    other_degrees: List[int] = field(default_factory=list)
    length: int = 0
    residual_factors: List[list] = field(default_factory=list)


def _random_invertible(F: Field, n: int, rng: random.Random):
    while True:
        A = [[F.random_element(rng, 40) for _ in range(n)] for _ in range(n)]
        if linalg.rank(A, F) == n:
            return A


def _chart(gens: Sequence[Poly], ring: PolyRing, A) -> Tuple[PolyRing, List[Poly]]:
    """Substitute ``x = A z`` with ``z_{n-1} = 1``."""
    F = ring.field
    n = ring.nvars
    aff = PolyRing(F, n - 1, [f"z{i}" for i in range(n - 1)])
    zs = aff.gens() + [aff.one()]
    images = []
    for i in range(n):
        acc = aff.zero()
        for j in range(n):
            if not F.is_zero(A[i][j]):
                acc = acc + zs[j].scale(A[i][j])
        images.append(acc)
    return aff, [g.substitute(images) for g in gens]


def multiplication_matrices(gb, basis: List[tuple]) -> List[list]:
    """Matrices (rows = basis index of the result) of multiplication by each variable."""
    ring = gb.ring
    F = ring.field
    n = ring.nvars
    pos = {m: k for k, m in enumerate(basis)}
    mats = []
    for i in range(n):
        cols = []
        for m in basis:
            e = list(m)
            e[i] += 1
            nf = gb.normal_form(ring.monomial(tuple(e)))
            col = [F.zero] * len(basis)
            for ex, c in nf.terms.items():
                col[pos[ex]] = c
            cols.append(col)
        mats.append(linalg.transpose(cols))
    return mats


def _combine(mats, coeffs, F):
    N = len(mats[0])
    out = [[F.zero] * N for _ in range(N)]
    for M, c in zip(mats, coeffs):
        if F.is_zero(c):
            continue
        for i in range(N):
            row, orow = M[i], out[i]
            for j in range(N):
                if not F.is_zero(row[j]):
                    orow[j] = F.add(orow[j], F.mul(c, row[j]))
    return out


def _eigen_point(mats, ell, lam, mult, F):
    """Coordinates of the point where ``ell`` takes the value ``lam``."""
    N = len(ell)
    shifted = [[F.sub(ell[i][j], lam) if i == j else ell[i][j] for j in range(N)] for i in range(N)]
    P = shifted
    for _ in range(mult - 1):
        P = linalg.matmul(P, shifted, F)
    K = linalg.nullspace(P, F, N)
    m = len(K)
    Kc = linalg.transpose(K)            # N x m, columns span the generalized eigenspace
    coords = []
    for M in mats:
        MK = linalg.matmul(M, Kc, F)
        # solve Kc * A = MK column by column, then average the diagonal
        tr = F.zero
        for j in range(m):
            col = [MK[i][j] for i in range(N)]
            sol = linalg.solve(Kc, col, F)
            tr = F.add(tr, sol[j])
        coords.append(F.div(tr, F.convert(m)))
    return coords


def _prepare(gens: Sequence[Poly], ring: PolyRing, seed: int):
    F = ring.field
    n = ring.nvars
    rng = random.Random(seed)
    A = _random_invertible(F, n, rng)
    aff, eqs = _chart(gens, ring, A)
    eqs = [e for e in eqs if not e.is_zero()]
    if not eqs:
        raise NotZeroDimensional("no equations")
    gb = groebner_basis(eqs, aff)
    if gb.is_unit():
        return A, None, None, None
    try:
        basis = standard_monomials(gb)
    except ValueError as exc:
        raise NotZeroDimensional(str(exc)) from None
    mats = multiplication_matrices(gb, basis)
    coeffs = [F.random_element(rng, 1000) for _ in range(n - 1)]
    ell = _combine(mats, coeffs, F)
    return A, mats, ell, linalg.charpoly(ell, F)


def _strip_root(F, f, lam):
    mult = 0
    while True:
        q, r = univariate.divmod_(F, f, [F.neg(lam), F.one])
        if r:
            return f, mult
        f = q
        mult += 1


def _lift(A, z, F):
    n = len(A)
    return _normalize([F.sum(F.mul(F.convert(A[i][j]), zj)
                             for j, zj in enumerate(z + [F.one])) for i in range(n)], F)


def solve_projective(gens: Sequence[Poly], ring: PolyRing, seed: int = 0) -> PointSet:
    """All ``K``-rational points of a zero-dimensional projective scheme."""
    F = ring.field
    A, mats, ell, cp = _prepare(gens, ring, seed)
    if mats is None:
        return PointSet([], [], [], 0)
    points, mults = [], []
    rest = list(cp)
    for lam in univariate.roots(F, cp):
        rest, mult = _strip_root(F, rest, lam)
        z = _eigen_point(mats, ell, lam, mult, F)
        points.append(_lift(A, z, F))
        mults.append(mult)
    factors = []
    if len(rest) > 1 and (F.is_prime_field or F.is_rational):
        factors = _irreducible_factors(F, rest)
    return PointSet(points, mults, sorted(len(f) - 1 for f in factors), len(ell), factors)


def _irreducible_factors(F, f):
    import flint
    if F.is_prime_field:
        _, fac = flint.nmod_poly([int(c) for c in f], F.p).factor()
        return [[int(c) for c in p.coeffs()] for p, e in fac for _ in range(e)]
    from fractions import Fraction
    _, fac = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in f]).factor()
    out = []
    for p, e in fac:
        cs = [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]
        cs = univariate.monic(F, cs)
        out.extend([cs] * e)
    return out


def point_over_extension(gens: Sequence[Poly], ring: PolyRing, seed: int = 0,
                         max_degree: int = 4) -> Tuple[Field, tuple]:
    """A point of a zero-dimensional scheme over the smallest residue field found (degree <= max_degree)."""
    res = solve_projective(gens, ring, seed)
    if res.points:
        return ring.field, res.points[0]
    cands = sorted((f for f in res.residual_factors if 1 < len(f) - 1 <= max_degree), key=len)
    if not cands:
        raise NotZeroDimensional("no point over an extension of the allowed degree")
    E = ExtensionField(ring.field, cands[0], "a")
    A, mats, ell, cp = _prepare(gens, ring, seed)
    up = lambda M: [[E.convert(x) for x in row] for row in M]
    mats_e = [up(M) for M in mats]
    ell_e = up(ell)
    lam = E.gen()
    _, mult = _strip_root(E, [E.convert(c) for c in cp], lam)
    z = _eigen_point(mats_e, ell_e, lam, max(mult, 1), E)
    return E, _lift(A, z, E)


def _normalize(x, F):
    for c in x:
        if not F.is_zero(c):
            inv = F.inv(c)
            return tuple(F.mul(inv, v) for v in x)
    raise ValueError("zero vector is not a projective point")


def slice_to_points(gens: Sequence[Poly], ring: PolyRing, dim: int, seed: int = 0) -> Tuple[List[Poly], PointSet]:
    """Cut a ``dim``-dimensional scheme with seeded random hyperplanes and solve."""
    rng = random.Random(seed)
    F = ring.field
    cuts = [ring.linear_form([F.random_element(rng, 40) for _ in range(ring.nvars)]) for _ in range(dim)]
    eqs = list(gens) + cuts
    return cuts, solve_projective(eqs, ring, seed + 1)


def solve_graded_piece(rows: Sequence[Sequence], ring: PolyRing, degree: int, seed: int = 0) -> Optional[PointSet]:
    """Rational points of the scheme cut out by one graded piece, by linear algebra alone.

    ``rows`` are coefficient vectors of forms of the given degree. When the quotient has the
    same dimension in this degree and the next, multiplication by ``x_i / l`` for a generic
    linear form ``l`` acts on the quotient and its eigenvalues are the point coordinates.
    Returns None when the Hilbert function has not stabilized yet.
    """
    F = ring.field
    n = ring.nvars
    mons = monomials(n, degree)
    up_idx = monomial_index(n, degree + 1)
    R, piv = linalg.rref([list(r) for r in rows], F, len(mons)) if rows else ([], [])
    length = len(mons) - len(R)
    if length == 0:
        return PointSet([], [], [], 0)
    shifted = []
    for r in R:
        for i in range(n):
            v = [F.zero] * len(up_idx)
            for m, c in zip(mons, r):
                if not F.is_zero(c):
                    e = list(m)
                    e[i] += 1
                    v[up_idx[tuple(e)]] = c
            shifted.append(v)
    R1, piv1 = linalg.rref(shifted, F, len(up_idx)) if shifted else ([], [])
    if len(up_idx) - len(R1) != length:
        return None
    pivset = set(piv)
    std = [m for k, m in enumerate(mons) if k not in pivset]
    where = {c: t for t, c in enumerate(piv1)}
    free1 = [c for c in range(len(up_idx)) if c not in where]
    fpos = {c: t for t, c in enumerate(free1)}

    def coords(col: int) -> list:
        out = [F.zero] * length
        if col in fpos:
            out[fpos[col]] = F.one
        else:
            row = R1[where[col]]
            for c in free1:
                if not F.is_zero(row[c]):
                    out[fpos[c]] = F.neg(row[c])
        return out

    mult = []
    for i in range(n):
        cols = []
        for m in std:
            e = list(m)
            e[i] += 1
            cols.append(coords(up_idx[tuple(e)]))
        mult.append(linalg.transpose(cols))
    rng = random.Random(seed)
    for _ in range(10):
        l0 = _combine(mult, [F.random_element(rng, 1000) for _ in range(n)], F)
        if linalg.rank(l0, F, length) == length:
            break
    else:
        return None
    inv = linalg.inverse(l0, F)
    mats = [linalg.matmul(inv, M, F) for M in mult]
    ell = _combine(mats, [F.random_element(rng, 1000) for _ in range(n)], F)
    cp = linalg.charpoly(ell, F)
    points, mults = [], []
    rest = list(cp)
    for lam in univariate.roots(F, cp):
        rest, m = _strip_root(F, rest, lam)
        points.append(_normalize(_eigen_point(mats, ell, lam, m, F), F))
        mults.append(m)
    factors = _irreducible_factors(F, rest) if len(rest) > 1 and (F.is_prime_field or F.is_rational) else []
    return PointSet(points, mults, sorted(len(f) - 1 for f in factors), length, factors)
