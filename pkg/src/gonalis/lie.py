"""Infinitesimal automorphisms of a scroll, an sl2 inside them, and the ruling read off from weights."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, univariate
from .fields import Field
from .poly import Poly, PolyRing
from .resolution import GradedQuotient


class NoSplitTorus(RuntimeError):
    """No rational sl2 triple found within the retry budget."""


class CharacteristicObstruction(ValueError):
    """The characteristic is too small to separate the weights."""


class NoRuling(ValueError):
    """The weight decomposition has no module that defines a map to the line."""


Matrix = List[list]


@dataclass
class MatrixLieAlgebra:
    basis: List[Matrix]
    field: Field

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    def bracket(self, a: Matrix, b: Matrix) -> Matrix:
        F = self.field
        ab = linalg.matmul(a, b, F)
        ba = linalg.matmul(b, a, F)
        return [[F.sub(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]

    def _flat(self) -> Matrix:
        return [[x for row in M for x in row] for M in self.basis]

    def coordinates(self, M: Matrix) -> Optional[list]:
        """Coordinates of ``M`` in the basis, or None when ``M`` is outside the span."""
        A = linalg.transpose(self._flat())
        return linalg.solve(A, [x for row in M for x in row], self.field)

    def combination(self, coeffs: Sequence) -> Matrix:
        F = self.field
        n = self.size
        out = [[F.zero] * n for _ in range(n)]
        for c, M in zip(coeffs, self.basis):
            if F.is_zero(c):
                continue
            for i in range(n):
                for j in range(n):
                    if not F.is_zero(M[i][j]):
                        out[i][j] = F.add(out[i][j], F.mul(c, M[i][j]))
        return out

    def is_closed(self) -> bool:
        return all(self.coordinates(self.bracket(a, b)) is not None
                   for i, a in enumerate(self.basis) for b in self.basis[i + 1:])

    def derived(self) -> "MatrixLieAlgebra":
        F = self.field
        n = self.size
        flats = [[x for row in self.bracket(a, b) for x in row]
                 for i, a in enumerate(self.basis) for b in self.basis[i + 1:]]
        basis = linalg.row_basis(flats, F, n * n) if flats else []
        return MatrixLieAlgebra([[v[i * n:(i + 1) * n] for i in range(n)] for v in basis], F)

    def ad(self, x: Matrix) -> Matrix:
        """Matrix of ``ad x`` in the basis (columns are images of basis vectors)."""
        cols = [self.coordinates(self.bracket(x, b)) for b in self.basis]
        if any(c is None for c in cols):
            raise ValueError("element does not normalize the algebra")
        return linalg.transpose(cols)


@dataclass
class Sl2Triple:
    e: Matrix
    h: Matrix
    f: Matrix
    field: Field
    weights: List[int] = field(default_factory=list)

    def check(self) -> bool:
        L = MatrixLieAlgebra([], self.field)
        F = self.field

        def scaled(M, c):
            return [[F.mul(F.convert(c), x) for x in row] for row in M]

        return (L.bracket(self.h, self.e) == scaled(self.e, 2)
                and L.bracket(self.h, self.f) == scaled(self.f, -2)
                and L.bracket(self.e, self.f) == self.h)

    @property
    def module_dims(self) -> List[int]:
        return module_dims_from_weights(self.weights)


def lie_algebra_of(generators: Sequence[Poly], ring: Optional[PolyRing] = None) -> MatrixLieAlgebra:
    """Trace-free ``M`` with ``<grad F, M x>`` in the ideal for every quadric generator ``F``."""
    ring = ring or generators[0].ring
    F = ring.field
    n = ring.nvars
    quads = [q for q in generators if q.degree() == 2]
    Q = GradedQuotient(ring, quads, 2)
    width = len(Q.standard[2])
    rows: Matrix = []
    xs = ring.gens()
    for q in quads:
        grads = [q.derivative(i) for i in range(n)]
        cols = []
        for i in range(n):
            for j in range(n):
                term = grads[i] * xs[j] if grads[i] else ring.zero()
                cols.append(Q.normal_form_vector(term.to_vector(2), 2) if term else [F.zero] * width)
        rows.extend([[cols[k][t] for k in range(n * n)] for t in range(width)])
    rows.append([F.one if i == j else F.zero for i in range(n) for j in range(n)])
    ker = linalg.nullspace(rows, F, n * n)
    return MatrixLieAlgebra([[v[i * n:(i + 1) * n] for i in range(n)] for v in ker], F)


def _lift_int(F: Field, a) -> Optional[int]:
    if F.is_prime_field:
        v = int(a) % F.p
        return v - F.p if v > F.p // 2 else v
    if F.is_rational:
        return int(a) if a.denominator == 1 else None
    return None


def _is_nilpotent(M: Matrix, F: Field) -> bool:
    P = M
    for _ in range(len(M)):
        P = linalg.matmul(P, M, F)
    return linalg.is_zero_matrix(P, F)


def _eigenvalues(M: Matrix, F: Field) -> list:
    return univariate.roots(F, linalg.charpoly(M, F))


def weights_of(h: Matrix, F: Field) -> Optional[List[int]]:
    """Integer eigenvalues of a diagonalizable ``h`` with multiplicity, or None."""
    n = len(h)
    out: List[int] = []
    for lam in _eigenvalues(h, F):
        shifted = [[F.sub(h[i][j], lam) if i == j else h[i][j] for j in range(n)] for i in range(n)]
        k = len(linalg.nullspace(shifted, F, n))
        w = _lift_int(F, lam)
        if w is None:
            return None
        out.extend([w] * k)
    return sorted(out, reverse=True) if len(out) == n else None


def module_dims_from_weights(weights: Sequence[int]) -> List[int]:
    """Irreducible sl2 module dimensions from a weight multiset."""
    count: Dict[int, int] = {}
    for w in weights:
        count[w] = count.get(w, 0) + 1
    dims: List[int] = []
    for m in sorted({abs(w) for w in weights}):
        extra = count.get(m, 0) - count.get(m + 2, 0)
        dims.extend([m + 1] * extra)
    return sorted(dims)


def _triple_through(L: MatrixLieAlgebra, e: Matrix) -> Optional[Sl2Triple]:
    """Complete a nilpotent ``e`` to a triple: solve ``[e,[e,z]] = -2e``, set ``h = [e,z]``, then solve for ``f``."""
    F = L.field
    n = L.size
    ez = [L.bracket(e, b) for b in L.basis]
    eez = [L.bracket(e, m) for m in ez]
    A = linalg.transpose([[x for row in M for x in row] for M in eez])
    z = linalg.solve(A, [F.neg(F.mul(F.convert(2), x)) for row in e for x in row], F)
    if z is None:
        return None
    h = _span_apply(ez, z, F, n)
    # f with [e, f] = h and [h, f] = -2 f
    hb = [L.bracket(h, b) for b in L.basis]
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            rows.append([ez[k][i][j] for k in range(L.dim)])
            rhs.append(h[i][j])
    for i in range(n):
        for j in range(n):
            rows.append([F.add(hb[k][i][j], F.mul(F.convert(2), L.basis[k][i][j])) for k in range(L.dim)])
            rhs.append(F.zero)
    c = linalg.solve(rows, rhs, F)
    if c is None:
        return None
    f = L.combination(c)
    w = weights_of(h, F)
    if w is None:
        return None
    t = Sl2Triple(e, h, f, F, w)
    return t if t.check() else None


def _span_apply(mats: Sequence[Matrix], coeffs: Sequence, F: Field, n: int) -> Matrix:
    return MatrixLieAlgebra(list(mats), F).combination(coeffs) if mats else [[F.zero] * n for _ in range(n)]


def sl2_summand(L: MatrixLieAlgebra, seed: int = 0, attempts: int = 30) -> Sl2Triple:
    """An sl2 triple in ``L`` from nilpotent root vectors of random elements of the derived algebra.

    Sampling continues until some element has a split characteristic polynomial; among all
    triples seen, the one with the highest weight is kept.
    """
    F = L.field
    if F.characteristic and F.characteristic <= 2 * L.size + 2:
        raise CharacteristicObstruction(f"characteristic {F.characteristic} is too small for weights up to {L.size}")
    D = L.derived()
    if D.dim == 0:
        raise NoSplitTorus("the algebra is solvable")
    rng = random.Random(seed)
    best: Optional[Sl2Triple] = None
    for _ in range(attempts):
        x = D.combination([F.random_element(rng, 1000) for _ in range(D.dim)])
        adx = D.ad(x)
        covered = 0
        for mu in _eigenvalues(adx, F):
            shifted = [[F.sub(adx[i][j], mu) if i == j else adx[i][j] for j in range(D.dim)] for i in range(D.dim)]
            power = shifted
            for _ in range(D.dim - 1):
                power = linalg.matmul(power, shifted, F)
            vecs = linalg.nullspace(power, F, D.dim)     # generalized eigenspace of ad x
            covered += len(vecs)
            if F.is_zero(mu):
                continue
            coeffs = [F.zero] * D.dim
            for v in vecs:
                c = F.random_element(rng, 1000)
                coeffs = [F.add(a, F.mul(c, b)) for a, b in zip(coeffs, v)]
            e = D.combination(coeffs)
            if linalg.is_zero_matrix(e, F) or not _is_nilpotent(e, F):
                continue
            triple = _triple_through(L, e)
            # several sl2's occur when the scroll type repeats; the ruling has the top weight
            if triple is not None and (best is None or _rank_key(triple) > _rank_key(best)):
                best = triple
        # a split torus element exposes every root space, so nothing better can turn up
        if best is not None and covered == D.dim:
            break
    if best is not None:
        return best
    raise NoSplitTorus("no rational sl2 triple found; a quadratic extension may be needed")


def _rank_key(t: Sl2Triple) -> Tuple[int, int]:
    return max(t.weights), -t.module_dims.count(1)


def _form_action(M: Matrix, F: Field) -> Matrix:
    """Action on coefficient vectors of linear forms (the contragredient ``-M^T``)."""
    return [[F.neg(x) for x in row] for row in linalg.transpose(M)]


def weight_modules(triple: Sl2Triple) -> List[List[list]]:
    """Linear-form weight strings ``[v, f v, f^2 v, ...]`` of an irreducible decomposition (highest first)."""
    F = triple.field
    n = len(triple.h)
    H, E, Fm = (_form_action(M, F) for M in (triple.h, triple.e, triple.f))
    strings: List[List[list]] = []
    taken: List[list] = []
    for m in sorted({w for w in triple.weights if w >= 0}, reverse=True):
        lam = F.convert(m)
        shifted = [[F.sub(H[i][j], lam) if i == j else H[i][j] for j in range(n)] for i in range(n)]
        hw = linalg.nullspace(shifted + E, F, n)    # weight m, killed by e
        for v in hw:
            if taken and linalg.rank(taken + [v], F, n) == len(taken):
                continue
            string = [v]
            for _ in range(m):
                string.append(linalg.matvec(Fm, string[-1], F))
            strings.append(string)
            taken.extend(string)
    return strings


def structure_map_from_weights(triple: Sl2Triple, ring: PolyRing) -> Tuple[Poly, Poly, dict]:
    """Ratio of the two top weight vectors of a smallest module; 2-dimensional modules first."""
    strings = [s for s in weight_modules(triple) if len(s) >= 2]
    if not strings:
        raise NoRuling("no module of dimension at least 2")
    best = min(strings, key=len)
    num, den = ring.linear_form(best[0]), ring.linear_form(best[1])
    meta = {"module_dim": len(best), "two_dimensional": len(best) == 2,
            "two_dimensional_count": sum(1 for s in strings if len(s) == 2)}
    return num, den, meta


def lie_report(generators: Sequence[Poly], ring: PolyRing, seed: int = 0) -> dict:
    L = lie_algebra_of(generators, ring)
    t = sl2_summand(L, seed)
    num, den, meta = structure_map_from_weights(t, ring)
    out = {"lie_dim": L.dim, "module_dims": t.module_dims, "closed": L.is_closed(),
           "map": {"num": str(num), "den": str(den)}}
    out.update(meta)
    return out
