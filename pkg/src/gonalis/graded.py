"""Graded maps between free modules and their degree-by-degree matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .poly import Poly, PolyRing, monomial_index, monomials, exp_add


class NonlinearEntry(ValueError):
    """A matrix expected to be linear has an entry of another degree."""


@dataclass
class GradedMap:
    """``F -> G`` with ``F = sum S(-source_twists[j])`` and ``G = sum S(-target_twists[i])``.

    ``entries[i][j]`` is homogeneous of degree ``source_twists[j] - target_twists[i]``.
    """

    ring: PolyRing
    source_twists: List[int]
    target_twists: List[int]
    entries: List[List[Poly]]

    def __post_init__(self):
        if len(self.entries) != len(self.target_twists):
            raise ValueError("row count does not match target rank")
        for row in self.entries:
            if len(row) != len(self.source_twists):
                raise ValueError("column count does not match source rank")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], ring: PolyRing,
                  target_twists: Optional[Sequence[int]] = None) -> "GradedMap":
        """Infer twists from entry degrees (target twists default to 0)."""
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        tt = list(target_twists) if target_twists is not None else [0] * nr
        st = []
        for j in range(nc):
            d = None
            for i in range(nr):
                p = rows[i][j]
                if not p.is_zero():
                    d = p.degree() + tt[i]
                    break
            st.append(d if d is not None else max(tt, default=0))
        return cls(ring, st, tt, [list(r) for r in rows])

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.target_twists), len(self.source_twists)

    @property
    def nrows(self) -> int:
        return len(self.target_twists)

    @property
    def ncols(self) -> int:
        return len(self.source_twists)

    def column(self, j: int) -> List[Poly]:
        return [row[j] for row in self.entries]

    def transpose(self) -> "GradedMap":
        """The dual map ``G* -> F*``, twists negated."""
        return GradedMap(self.ring, [-t for t in self.target_twists], [-t for t in self.source_twists],
                         [list(c) for c in zip(*self.entries)] if self.entries else [])

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in composition")
        R = self.ring
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero()
                for k in range(self.ncols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMap(R, list(other.source_twists), list(self.target_twists), rows)

    __matmul__ = compose

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def is_homogeneous(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                if p and (not p.is_homogeneous() or p.degree() != self.source_twists[j] - self.target_twists[i]):
                    return False
        return True

    def is_minimal(self) -> bool:
        """No nonzero constant entries."""
        return all(p.is_zero() or p.degree() >= 1 for row in self.entries for p in row)

    def evaluate(self, point: Sequence) -> list:
        F = self.ring.field
        return [[p.evaluate(point) if p else F.zero for p in row] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMap":
        return GradedMap(self.ring, [self.source_twists[j] for j in cols],
                         [self.target_twists[i] for i in rows],
                         [[self.entries[i][j] for j in cols] for i in rows])

    def degree_matrix(self, d: int) -> list:
        """Scalar matrix of ``F_d -> G_d`` in the monomial bases (see :func:`free_basis`)."""
        R = self.ring
        F = R.field
        n = R.nvars
        tgt = free_basis_index(n, self.target_twists, d)
        src = free_basis(n, self.source_twists, d)
        cols = []
        for j, m in src:
            col = [F.zero] * len(tgt[1])
            for i in range(self.nrows):
                p = self.entries[i][j]
                if not p:
                    continue
                off = tgt[0][i]
                idx = monomial_index(n, d - self.target_twists[i])
                for e, c in p.terms.items():
                    k = off + idx[exp_add(e, m)]
                    col[k] = F.add(col[k], c)
            cols.append(col)
        return linalg.transpose(cols) if cols else [[] for _ in range(len(tgt[1]))]


def free_basis(n: int, twists: Sequence[int], d: int) -> List[Tuple[int, tuple]]:
    """Basis ``(generator, monomial)`` of the degree-``d`` part of ``sum S(-twists)``."""
    out = []
    for j, t in enumerate(twists):
        for m in monomials(n, d - t):
            out.append((j, m))
    return out


def free_basis_index(n: int, twists: Sequence[int], d: int):
    offsets = []
    basis = []
    for j, t in enumerate(twists):
        offsets.append(len(basis))
        basis.extend((j, m) for m in monomials(n, d - t))
    return offsets, basis


def vector_to_column(vec: Sequence, ring: PolyRing, twists: Sequence[int], d: int) -> List[Poly]:
    """Inverse of the degree-``d`` coordinate map: a module element as a list of polys."""
    F = ring.field
    n = ring.nvars
    out = []
    k = 0
    for t in twists:
        mons = monomials(n, d - t)
        terms = {}
        for m in mons:
            c = vec[k]
            if not F.is_zero(c):
                terms[m] = c
            k += 1
        out.append(Poly(ring, terms))
    return out


def column_to_vector(col: Sequence[Poly], ring: PolyRing, twists: Sequence[int], d: int) -> list:
    out = []
    for p, t in zip(col, twists):
        if p:
            out.extend(p.to_vector(d - t))
        else:
            out.extend([ring.field.zero] * len(monomials(ring.nvars, d - t)))
    return out


def linear_coefficients(p: Poly, nvars: int) -> list:
    """Coefficient vector of a linear form (zero allowed)."""
    F = p.field
    v = [F.zero] * nvars
    for e, c in p.terms.items():
        if sum(e) != 1:
            raise NonlinearEntry(f"entry {p} is not linear")
        v[e.index(1)] = c
    return v
