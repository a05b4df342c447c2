"""Closed-form numerology: Clifford windows, Brill-Noether counts, scroll Betti rows, plane bounds."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import List


@dataclass(frozen=True)
class GonalityBounds:
    lower: int
    upper: int
    certificate: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty bracket [{self.lower}, {self.upper}]")

    def contains(self, d: int) -> bool:
        return self.lower <= d <= self.upper

    def as_list(self) -> List[int]:
        return [self.lower, self.upper]


def brill_noether_rho(g: int, r: int, d: int) -> int:
    """``g - (r+1)(g-d+r)``."""
    return g - (r + 1) * (g - d + r)


def gonality_upper_bound(g: int) -> int:
    """Largest possible gonality of a genus-``g`` curve."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return (g + 3) // 2


def clifford_window(c: int) -> List[int]:
    """Possible gonalities for Clifford index ``c``."""
    if c < 0:
        raise ValueError("Clifford index is nonnegative")
    return [c + 2, c + 3]


def clifford_of_divisor(degree: int, h0: int) -> int:
    if h0 < 1:
        raise ValueError("h0 must be positive")
    return degree - 2 * (h0 - 1)


def w1d_count(g: int, d: int | None = None) -> int:
    """Number of maximal-degree pencils on a general curve of even genus."""
    if g % 2:
        raise ValueError("the finite count applies to even genus; odd genus gives a curve of pencils")
    top = (g + 3) // 2
    if d is None:
        d = top
    if d != top:
        raise ValueError(f"d must be {top} for genus {g}")
    return factorial(g) // (factorial(g - d + 1) * factorial(g - d + 2))


def w1d_curve_class(g: int) -> int:
    """Coefficient of the theta power in the class of the pencil curve (odd genus)."""
    if g % 2 == 0:
        raise ValueError("odd genus expected")
    d = (g + 3) // 2
    return factorial(g) // (factorial(g - d + 1) * factorial(g - d + 2))


def w1d_curve_genus_formula(g: int) -> int:
    """Published closed form ``2*C(2n+1, n-1) + 1`` for ``g = 2n+1``.

    Flagged: disagrees with the genus 15 quoted for ``g = 7``; not used as ground truth.
    """
    if g % 2 == 0 or g < 3:
        raise ValueError("odd genus >= 3 expected")
    n = (g - 1) // 2
    return 2 * comb(2 * n + 1, n - 1) + 1


def scroll_betti_row(f: int) -> List[int]:
    """Linear strand of the Eagon-Northcott resolution of a codimension-``f`` scroll."""
    if f < 1:
        raise ValueError("codimension must be positive")
    return [i * comb(f + 1, i + 1) for i in range(1, f + 1)]


def plane_gonality_bounds(d: int, nu: int, delta: int) -> GonalityBounds:
    """Bracket the gonality of a degree-``d`` plane model with maximal multiplicity ``nu``.

    ``upper`` is the projection from the worst point; the lower bound is exact when
    the quadratic test passes and the Sakai bound otherwise.
    """
    if d < 3 or not 1 <= nu < d:
        raise ValueError("need d >= 3 and 1 <= nu < d")
    upper = d - nu
    if 2 * nu > d:
        return GonalityBounds(min(2, upper), upper, "none")
    x = d // nu
    q = x * (x - d) + d + delta - nu
    if q <= 0:
        return GonalityBounds(upper, upper, "OS-exact")
    return GonalityBounds(max(min(2, upper), upper - q), upper, "Sakai")
