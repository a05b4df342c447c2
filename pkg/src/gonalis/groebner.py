"""Buchberger Groebner bases for ideals and submodules of free modules.

Module elements are lists of :class:`Poly` (one entry per free generator).
Internally every term is keyed by ``(component, exponent)`` and compared
position-over-term: component 0 is largest, ties broken by grevlex.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Poly, PolyRing, exp_add, exp_divides, exp_lcm, exp_sub, grevlex_key


class DegreeBudgetExceeded(RuntimeError):
    """A Groebner computation needed an S-pair above the configured degree cutoff."""


Key = Tuple[int, tuple]   # (component, exponent)


def _order(k: Key):
    return (-k[0],) + grevlex_key(k[1])


def _neg_order(k: Key):
    o = _order(k)
    return tuple(-x for x in o)


class _Vec:
    """Internal module element: sorted term list plus a dict view."""

    __slots__ = ("terms", "lead", "lc")

    def __init__(self, terms: Dict[Key, object]):
        self.terms = terms
        if terms:
            self.lead = max(terms, key=_order)
            self.lc = terms[self.lead]
        else:
            self.lead = None
            self.lc = None


def _to_internal(vec: Sequence[Poly]) -> Dict[Key, object]:
    out = {}
    for comp, p in enumerate(vec):
        for e, c in p.terms.items():
            out[(comp, e)] = c
    return out


def _from_internal(terms: Dict[Key, object], ring: PolyRing, rank: int) -> List[Poly]:
    parts: List[Dict] = [dict() for _ in range(rank)]
    for (comp, e), c in terms.items():
        parts[comp][e] = c
    return [Poly(ring, t) for t in parts]


def _reduce(terms: Dict[Key, object], basis: List[_Vec], F, full=True) -> Dict[Key, object]:
    """Normal form of ``terms`` modulo ``basis`` (leads monic)."""
    rem: Dict[Key, object] = dict(terms)
    out: Dict[Key, object] = {}
    heap = [(_neg_order(k), k) for k in rem]
    heapq.heapify(heap)
    by_comp: Dict[int, List[_Vec]] = {}
    for b in basis:
        by_comp.setdefault(b.lead[0], []).append(b)
    while heap:
        _, k = heapq.heappop(heap)
        c = rem.pop(k, None)
        if c is None:
            continue
        red = None
        for b in by_comp.get(k[0], ()):
            if exp_divides(b.lead[1], k[1]):
                red = b
                break
        if red is None:
            if not full:
                out[k] = c
                # keep the rest untouched
                for kk, cc in rem.items():
                    out[kk] = cc
                return out
            out[k] = c
            continue
        shift = exp_sub(k[1], red.lead[1])
        f = F.mul(c, F.inv(red.lc)) if not F.is_one(red.lc) else c
        for (comp, e), bc in red.terms.items():
            kk = (comp, exp_add(e, shift))
            if kk == k:
                continue
            v = F.mul(f, bc)
            if kk in rem:
                nv = F.sub(rem[kk], v)
                if F.is_zero(nv):
                    del rem[kk]
                else:
                    rem[kk] = nv
            else:
                rem[kk] = F.neg(v)
                heapq.heappush(heap, (_neg_order(kk), kk))
    return out


def _make_monic(terms, F):
    v = _Vec(terms)
    if v.lead is None or F.is_one(v.lc):
        return v
    inv = F.inv(v.lc)
    return _Vec({k: F.mul(inv, c) for k, c in terms.items()})


def _spoly(a: _Vec, b: _Vec, F) -> Dict[Key, object]:
    lcm = exp_lcm(a.lead[1], b.lead[1])
    sa = exp_sub(lcm, a.lead[1])
    sb = exp_sub(lcm, b.lead[1])
    out: Dict[Key, object] = {}
    for (comp, e), c in a.terms.items():
        out[(comp, exp_add(e, sa))] = c
    for (comp, e), c in b.terms.items():
        k = (comp, exp_add(e, sb))
        if k in out:
            v = F.sub(out[k], c)
            if F.is_zero(v):
                del out[k]
            else:
                out[k] = v
        else:
            out[k] = F.neg(c)
    return out


def _buchberger(gens: List[Dict[Key, object]], F, is_ideal: bool,
                max_degree: Optional[int] = None) -> List[_Vec]:
    basis: List[_Vec] = []
    pairs: List[Tuple[tuple, int, int]] = []
    alive: List[bool] = []

    def add_element(v: _Vec):
        h = len(basis)
        basis.append(v)
        alive.append(True)
        hl = v.lead
        # chain criterion on existing pairs
        kept = []
        for item in pairs:
            _, i, j = item
            lij = exp_lcm(basis[i].lead[1], basis[j].lead[1])
            if (basis[i].lead[0] == hl[0] and exp_divides(hl[1], lij)
                    and exp_lcm(basis[i].lead[1], hl[1]) != lij
                    and exp_lcm(basis[j].lead[1], hl[1]) != lij):
                continue
            kept.append(item)
        pairs[:] = kept
        # new pairs, Gebauer-Moeller style pruning by lcm divisibility
        cand = []
        for i in range(h):
            if not alive[i] or basis[i].lead[0] != hl[0]:
                continue
            lcm = exp_lcm(basis[i].lead[1], hl[1])
            cand.append((lcm, i))
        cand.sort(key=lambda t: grevlex_key(t[0]))
        chosen: List[Tuple[tuple, int]] = []
        for lcm, i in cand:
            if any(exp_divides(l2, lcm) for l2, _ in chosen):
                continue
            chosen.append((lcm, i))
        for lcm, i in chosen:
            if is_ideal and all(min(x, y) == 0 for x, y in zip(basis[i].lead[1], hl[1])):
                continue
            heapq.heappush(pairs, ((sum(lcm),) + grevlex_key(lcm)[1:], i, h))
        # elements whose lead is divisible by the new lead become redundant for new pairs
        for i in range(h):
            if alive[i] and basis[i].lead[0] == hl[0] and exp_divides(hl[1], basis[i].lead[1]):
                alive[i] = False

    start = []
    for g in gens:
        if g:
            start.append(g)
    start.sort(key=lambda t: _order(max(t, key=_order)))
    for g in start:
        r = _reduce(g, basis, F)
        if r:
            add_element(_make_monic(r, F))
    while pairs:
        key, i, j = heapq.heappop(pairs)
        if max_degree is not None and key[0] > max_degree:
            raise DegreeBudgetExceeded(f"S-pair of degree {key[0]} exceeds cutoff {max_degree}")
        s = _spoly(basis[i], basis[j], F)
        r = _reduce(s, basis, F)
        if r:
            add_element(_make_monic(r, F))
    return _interreduce(basis, F)


def _interreduce(basis: List[_Vec], F) -> List[_Vec]:
    # drop elements with divisible leads, then reduce tails
    basis = sorted(basis, key=lambda v: _order(v.lead))
    minimal: List[_Vec] = []
    for v in basis:
        if any(m.lead[0] == v.lead[0] and exp_divides(m.lead[1], v.lead[1]) for m in minimal):
            continue
        minimal.append(v)
    out = []
    for i, v in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(v.terms)
        lc = tail.pop(v.lead)
        red = _reduce(tail, others, F)
        red[v.lead] = lc
        out.append(_make_monic(red, F))
    out.sort(key=lambda v: _order(v.lead))
    return out


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (grevlex, position-over-term for modules)."""

    ring: PolyRing
    elements: List[List[Poly]]
    rank: int
    _internal: List[_Vec] = field(default=None, repr=False)
    reduced: bool = True
    order: str = "grevlex/POT"

    @property
    def is_ideal(self) -> bool:
        return self.rank == 1

    @property
    def gens(self) -> List[Poly]:
        if self.rank != 1:
            raise ValueError("module basis has no polynomial generators")
        return [v[0] for v in self.elements]

    def __len__(self):
        return len(self.elements)

    def leading_exponents(self, component: int = 0) -> List[tuple]:
        return [v.lead[1] for v in self._internal if v.lead[0] == component]

    def normal_form(self, f) -> Poly | List[Poly]:
        if isinstance(f, Poly):
            vec, single = [f], True
        else:
            vec, single = list(f), False
        r = _reduce(_to_internal(vec), self._internal, self.ring.field)
        out = _from_internal(r, self.ring, self.rank)
        return out[0] if single else out

    def contains(self, f) -> bool:
        nf = self.normal_form(f)
        return nf.is_zero() if isinstance(nf, Poly) else all(p.is_zero() for p in nf)

    def is_unit(self) -> bool:
        return self.rank == 1 and any(sum(e) == 0 for e in self.leading_exponents())

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.rank == other.rank
                and [v.terms for v in self._internal] == [v.terms for v in other._internal])


def groebner_basis(gens, ring: Optional[PolyRing] = None, max_degree: Optional[int] = None) -> GroebnerBasis:
    """Reduced GB of an ideal (list of Poly) or a submodule (list of Poly lists)."""
    gens = list(gens)
    if not gens:
        if ring is None:
            raise ValueError("need a ring for the zero ideal")
        return GroebnerBasis(ring, [], 1, [])
    if isinstance(gens[0], Poly):
        vecs = [[g] for g in gens]
    else:
        vecs = [list(v) for v in gens]
    ring = ring or vecs[0][0].ring
    rank = len(vecs[0])
    for v in vecs:
        if len(v) != rank:
            raise ValueError("module generators of different ranks")
        for p in v:
            if p.ring.nvars != ring.nvars:
                raise ValueError("generators live in different rings")
    F = ring.field
    internal = _buchberger([_to_internal(v) for v in vecs], F, rank == 1, max_degree)
    elements = [_from_internal(v.terms, ring, rank) for v in internal]
    return GroebnerBasis(ring, elements, rank, internal)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(f)


def ideal_equal(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    ga = a if isinstance(a, GroebnerBasis) else groebner_basis(list(a), _ring_of(a))
    gb = b if isinstance(b, GroebnerBasis) else groebner_basis(list(b), _ring_of(b))
    return ga == gb


def _ring_of(gens):
    for g in gens:
        return g.ring
    return None


# -- Hilbert series -----------------------------------------------------------

def _minimalize_monomials(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(exp_divides(o, m) for o in out):
            out.append(m)
    return out


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add_int(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(mons: Sequence[tuple], nvars: int) -> List[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of ``S/(mons)``."""
    mons = _minimalize_monomials([tuple(m) for m in mons])
    return _hn(mons, nvars)


def _hn(mons, n):
    if not mons:
        return [1]
    if any(sum(m) == 0 for m in mons):
        return [0]
    # product case: pairwise coprime supports
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in mons]
    if all(not (supports[i] & supports[j]) for i in range(len(mons)) for j in range(i)):
        out = [1]
        for m in mons:
            d = sum(m)
            out = _poly_mul_int(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on a variable of a mixed generator, so both branches shrink
    mixed = [m for m in mons if sum(1 for x in m if x) > 1]
    counts = [0] * n
    for m in mixed:
        for i, x in enumerate(m):
            if x:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    e = min(m[v] for m in mixed if m[v])
    piv = tuple(e if i == v else 0 for i in range(n))
    added = _minimalize_monomials(list(mons) + [piv])
    quot = _minimalize_monomials([tuple(max(x - y, 0) for x, y in zip(m, piv)) for m in mons])
    a = _hn(added, n)
    b = _hn(quot, n)
    return _poly_add_int(a, [0] * e + b)


def hilbert_data(I, nvars: Optional[int] = None) -> Tuple[int, int]:
    """(projective dimension, degree) of ``V(I)``; dimension -1 means empty."""
    gb = I if isinstance(I, GroebnerBasis) else groebner_basis(list(I), _ring_of(I))
    n = gb.ring.nvars
    num = hilbert_numerator(gb.leading_exponents(), n)
    return _dim_degree(num, n)


def _dim_degree(num, n):
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return (-1, 0)
    k = n
    while k > 0 and sum(num) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        k -= 1
    if k == 0:
        return (-1, 0)
    return (k - 1, sum(num))


def hilbert_function(I, d: int) -> int:
    """dim (S/I)_d from the leading-term ideal."""
    gb = I if isinstance(I, GroebnerBasis) else groebner_basis(list(I), _ring_of(I))
    n = gb.ring.nvars
    num = hilbert_numerator(gb.leading_exponents(), n)
    # coefficient of t^d in num/(1-t)^n
    from math import comb
    return sum(c * comb(d - i + n - 1, n - 1) for i, c in enumerate(num) if d - i >= 0)


def standard_monomials(gb: GroebnerBasis) -> List[tuple]:
    """Monomials outside the leading-term ideal of a zero-dimensional affine ideal."""
    leads = gb.leading_exponents()
    n = gb.ring.nvars
    if not leads:
        raise ValueError("ideal is not zero-dimensional")
    for i in range(n):
        if not any(all(x == 0 for j, x in enumerate(m) if j != i) and m[i] > 0 for m in leads):
            raise ValueError("ideal is not zero-dimensional")
    out = []
    stack = [tuple([0] * n)]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        if any(exp_divides(l, m) for l in leads):
            continue
        out.append(m)
        for i in range(n):
            nm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nm not in seen:
                seen.add(nm)
                stack.append(nm)
    out.sort(key=grevlex_key)
    return out


def quotient_dimension(gb: GroebnerBasis) -> int:
    """dim_K S/I for a zero-dimensional affine ideal."""
    return len(standard_monomials(gb))


# -- syzygies and ideal operations ---------------------------------------------

def syzygies(columns: Sequence[Sequence[Poly]], ring: PolyRing, max_degree: Optional[int] = None) -> List[List[Poly]]:
    """Generators of ``{a : sum_j a_j columns[j] = 0}``, minimalized by a GB."""
    m = len(columns)
    if m == 0:
        return []
    r = len(columns[0])
    ext = []
    zero = ring.zero()
    for j, col in enumerate(columns):
        ext.append(list(col) + [ring.one() if k == j else zero for k in range(m)])
    gb = groebner_basis(ext, ring, max_degree)
    syz = []
    for v in gb.elements:
        if all(p.is_zero() for p in v[:r]):
            syz.append(v[r:])
    return syz


def ideal_quotient(I: Sequence[Poly], f: Poly) -> GroebnerBasis:
    """``(I : f)`` as a reduced GB."""
    ring = f.ring
    gens = [g for g in I if not g.is_zero()]
    if f.is_zero():
        return groebner_basis([ring.one()], ring)
    cols = [[f]] + [[g] for g in gens]
    syz = syzygies(cols, ring)
    quot = [s[0] for s in syz if not s[0].is_zero()]
    return groebner_basis(quot, ring) if quot else groebner_basis([], ring)


def intersect_ideals(ideals: Sequence[Sequence[Poly]], ring: PolyRing) -> GroebnerBasis:
    """Intersection of ideals via syzygies of ``[1 | I_1 | 0 ..] / [1 | 0 | I_2 ..]``."""
    ideals = [list(i.gens) if isinstance(i, GroebnerBasis) else [g for g in i if not g.is_zero()] for i in ideals]
    if not ideals:
        return groebner_basis([ring.one()], ring)
    current = ideals[0]
    zero = ring.zero()
    for nxt in ideals[1:]:
        cols = [[ring.one(), ring.one()]]
        cols += [[g, zero] for g in current]
        cols += [[zero, h] for h in nxt]
        syz = syzygies(cols, ring)
        current = [s[0] for s in syz if not s[0].is_zero()]
    return groebner_basis(current, ring) if current else groebner_basis([], ring)


def ideal_quotient_ideal(I: Sequence[Poly], J: Sequence[Poly]) -> GroebnerBasis:
    ring = _ring_of(I) or _ring_of(J)
    parts = [ideal_quotient(I, j).gens for j in J if not j.is_zero()]
    return intersect_ideals(parts, ring)


def saturate_wrt(I: Sequence[Poly], J: Sequence[Poly], max_iter: int = 50) -> GroebnerBasis:
    """``(I : J^infinity)``."""
    ring = _ring_of(I) or _ring_of(J)
    current = groebner_basis(list(I), ring)
    for _ in range(max_iter):
        nxt = ideal_quotient_ideal(current.gens, list(J))
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError("saturation did not stabilize")


def saturate_by_element(I: Sequence[Poly], f: Poly, max_iter: int = 50) -> GroebnerBasis:
    ring = f.ring
    current = groebner_basis(list(I), ring)
    for _ in range(max_iter):
        nxt = ideal_quotient(current.gens, f)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError("saturation did not stabilize")


def submodule_quotient(columns: Sequence[Sequence[Poly]], target: Sequence[Poly], ring: PolyRing) -> GroebnerBasis:
    """``{g : g * target in span(columns)}``."""
    cols = [list(target)] + [list(c) for c in columns]
    syz = syzygies(cols, ring)
    quot = [s[0] for s in syz if not s[0].is_zero()]
    return groebner_basis(quot, ring) if quot else groebner_basis([], ring)


def annihilator_of_cokernel(M) -> GroebnerBasis:
    """``Ann(coker M)`` for a matrix of polynomials given by rows (or a GradedMap)."""
    rows = M.entries if hasattr(M, "entries") else M
    ring = rows[0][0].ring
    nrows = len(rows)
    ncols = len(rows[0])
    columns = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    parts = []
    for i in range(nrows):
        e = [ring.one() if k == i else ring.zero() for k in range(nrows)]
        parts.append(submodule_quotient(columns, e, ring).gens)
    return intersect_ideals(parts, ring)
