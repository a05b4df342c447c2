"""Dense exact linear algebra over the engine's fields.

Matrices are lists of rows. Prime fields and QQ go through python-flint
(``nmod_mat`` / ``fmpq_mat``); extension fields use a plain Gauss-Jordan.
All results are canonical: reduced row echelon form with pivots searched in
column order, so nullspace bases do not depend on the backend.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import flint

from .fields import Field

Matrix = List[list]


def _to_flint(M: Matrix, F: Field, ncols: int):
    nrows = len(M)
    if F.is_prime_field:
        flat = [x for row in M for x in row]
        return flint.nmod_mat(nrows, ncols, flat, F.p)
    if F.is_rational:
        flat = [flint.fmpq(x.numerator, x.denominator) for row in M for x in row]
        return flint.fmpq_mat(nrows, ncols, flat)
    return None


def _from_flint(A, F: Field) -> Matrix:
    n, m = A.nrows(), A.ncols()
    ent = A.entries()
    if F.is_prime_field:
        flat = [int(x) for x in ent]
    else:
        flat = [Fraction(int(x.p), int(x.q)) for x in ent]
    return [flat[i * m:(i + 1) * m] for i in range(n)]


def rref(M: Matrix, F: Field, ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M or ncols == 0:
        return [], []
    A = _to_flint(M, F, ncols)
    if A is not None:
        R, r = A.rref()
        rows = _from_flint(R, F)[:r]
    else:
        rows = _gauss_jordan(M, F, ncols)
    pivots = []
    for row in rows:
        for j, x in enumerate(row):
            if not F.is_zero(x):
                pivots.append(j)
                break
    return rows, pivots


def _gauss_jordan(M: Matrix, F: Field, ncols: int) -> Matrix:
    A = [list(r) for r in M]
    rows = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if not F.is_zero(A[i][c]):
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return A[:r]


def rank(M: Matrix, F: Field, ncols: Optional[int] = None) -> int:
    if not M:
        return 0
    if ncols is None:
        ncols = len(M[0])
    A = _to_flint(M, F, ncols)
    if A is not None:
        return A.rank()
    return len(_gauss_jordan(M, F, ncols))


def nullspace(M: Matrix, F: Field, ncols: Optional[int] = None) -> Matrix:
    """Basis of ``{v : M v = 0}``; one vector per free column, in column order."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(M, F, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(R, piv):
            if not F.is_zero(row[f]):
                v[p] = F.neg(row[f])
        basis.append(v)
    return basis


def left_nullspace(M: Matrix, F: Field) -> Matrix:
    """Basis of ``{w : w M = 0}``."""
    return nullspace(transpose(M), F, len(M))


def row_basis(M: Matrix, F: Field, ncols: Optional[int] = None) -> Matrix:
    return rref(M, F, ncols)[0]


class SpanTracker:
    """Grows a set of independent vectors, testing each candidate by a rank update.

    Over QQ the test runs on images modulo a 61-bit prime, so a kept vector is
    certainly independent; a dependent-looking one is wrongly dropped only when the
    prime divides a minor of the exact matrix.
    """

    PRIME = 2 ** 61 - 1

    def __init__(self, F: Field, ncols: int):
        self.field = F
        self.ncols = ncols
        self.kept: Matrix = []
        self._echelon = []

    def _image(self, v: Sequence) -> Optional[list]:
        F = self.field
        if F.is_prime_field:
            return [int(x) for x in v]
        p = self.PRIME
        out = []
        for x in v:
            if x.denominator % p == 0:
                return None
            out.append(x.numerator * pow(x.denominator, -1, p) % p)
        return out

    def add(self, v: Sequence) -> bool:
        """Keep ``v`` if it enlarges the span; report whether it did."""
        F = self.field
        img = self._image(v) if (F.is_prime_field or F.is_rational) else None
        if img is None:
            grown = rank(self.kept + [list(v)], F, self.ncols) > len(self.kept)
        else:
            p = F.p if F.is_prime_field else self.PRIME
            A = flint.nmod_mat(len(self._echelon) + 1, self.ncols, [x for r in self._echelon + [img] for x in r], p)
            R, r = A.rref()
            grown = r > len(self._echelon)
            if grown:
                ent = [int(x) for x in R.entries()]
                self._echelon = [ent[i * self.ncols:(i + 1) * self.ncols] for i in range(r)]
        if grown:
            self.kept.append(list(v))
        return grown

    def basis(self) -> Matrix:
        """Reduced row echelon basis of the span."""
        return rref(self.kept, self.field, self.ncols)[0] if self.kept else []


def transpose(M: Matrix) -> Matrix:
    return [list(c) for c in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix, F: Field) -> Matrix:
    if not A or not B:
        return [[F.zero] * (len(B[0]) if B else 0) for _ in A]
    n, m = len(B), len(B[0])
    fa = _to_flint(A, F, n)
    if fa is not None:
        return _from_flint(fa * _to_flint(B, F, m), F)
    Bt = transpose(B)
    return [[F.sum(F.mul(x, y) for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence, F: Field) -> list:
    return [F.sum(F.mul(x, y) for x, y in zip(row, v)) for row in A]


def identity(n: int, F: Field) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def solve(A: Matrix, b: Sequence, F: Field) -> Optional[list]:
    """A particular solution of ``A x = b`` or None."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug, F, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    return x


def inverse(A: Matrix, F: Field) -> Matrix:
    n = len(A)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug, F, 2 * n)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


def det(A: Matrix, F: Field):
    n = len(A)
    if n == 0:
        return F.one
    M = [list(r) for r in A]
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(M[i][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(M[i][c]):
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def charpoly(A: Matrix, F: Field) -> list:
    """Characteristic polynomial ``det(t I - A)``, coefficients constant-first."""
    n = len(A)
    fa = _to_flint(A, F, n)
    if fa is not None:
        cp = fa.charpoly()
        coeffs = cp.coeffs()
        if F.is_prime_field:
            return [int(c) for c in coeffs]
        return [Fraction(int(c.p), int(c.q)) for c in coeffs]
    # Faddeev-LeVerrier needs char 0 or large char; fall back to Hessenberg-free Berkowitz-lite
    return _charpoly_interp(A, F)


def _charpoly_interp(A, F):
    n = len(A)
    pts = [F.convert(i) for i in range(n + 1)]
    vals = []
    for t in pts:
        M = [[F.sub(t if i == j else F.zero, A[i][j]) for j in range(n)] for i in range(n)]
        vals.append(det(M, F))
    from .univariate import interpolate
    return interpolate(F, pts, vals)


def is_zero_matrix(M: Matrix, F: Field) -> bool:
    return all(F.is_zero(x) for row in M for x in row)
