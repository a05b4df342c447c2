"""Regenerate the curve files shipped in ``gonalis/data/curves``.

Plane models are written as generated; the three Newton-polygon curves are also written as
precomputed canonical ideals so that downstream runs can skip the adjoint computation.
"""
from pathlib import Path
import time

from gonalis import fixtures
from gonalis.curvein import canonical_ideal, format_canonical, format_plane
from gonalis.fields import QQ

OUT = Path(fixtures.__file__).parent / "data" / "curves"

PLANE = {
    "sextic3nodes": lambda: fixtures.nodal_sextic(0, QQ),
    "sextic4nodes": lambda: fixtures.nodal_sextic(0, nodes=4),
    "genus9_goneric": lambda: fixtures.genus9_goneric(0),
    "genus9_octic": fixtures.genus9_octic_plane,
    "genus10": fixtures.genus10_plane,
    "genus12": fixtures.genus12_plane,
    "quintic_smooth_plane": lambda: fixtures.smooth_plane_curve(5, 0, QQ),
}
CANONICAL = {
    "general_g6": lambda: fixtures.random_genus6(0),
    "bielliptic_g6": lambda: fixtures.bielliptic_genus6(0),
    "quintic_smooth_g6": lambda: canonical_ideal(fixtures.smooth_plane_curve(5, 0)),
    "genus9_octic_canonical": lambda: canonical_ideal(fixtures.genus9_octic_plane()),
    "genus10_canonical": lambda: canonical_ideal(fixtures.genus10_plane()),
    "genus12_canonical": lambda: canonical_ideal(fixtures.genus12_plane()),
}
HYPERELLIPTIC = {
    "hyperelliptic_g3": "field QQ\nhyperelliptic y^2 = x^8 - 3*x^5 + 2*x^3 + x - 7\n",
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, make in PLANE.items():
        (OUT / f"{name}.txt").write_text(format_plane(make()))
    for name, make in CANONICAL.items():
        t = time.time()
        (OUT / f"{name}.txt").write_text(format_canonical(make()))
        print(f"{name}: {time.time() - t:.1f}s")
    for name, text in HYPERELLIPTIC.items():
        (OUT / f"{name}.txt").write_text(text)


if __name__ == "__main__":
    main()
