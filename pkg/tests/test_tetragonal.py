import pytest

from gonalis import fixtures
from gonalis.curvein import canonical_ideal, map_degree, plane_pencil_in_canonical
from gonalis.scrollar import fibers_agree, strand_data
from gonalis.tetragonal import (NotTetragonalWindow, classify_tetragonal, surface_hilbert_ok,
                                tetragonal_report)


def _matches(C, gm, pencil):
    return fibers_agree(C.ideal, (gm.num, gm.den), pencil, seed=2, samples=1)


def test_sextic_has_three_node_pencils(sextic):
    P, C, data = sextic
    cls, maps = tetragonal_report(C, 0, data)
    assert cls.variant == "delpezzo" and cls.surface_betti == [9, 16, 9]
    assert surface_hilbert_ok(cls, C.ring)
    x, y, z = P.ring.gens()
    nodes = [plane_pencil_in_canonical(C, a, b) for a, b in ((y, z), (x, z), (x, y))]
    assert len(maps) == 3
    assert sorted(next(i for i, pen in enumerate(nodes) if _matches(C, gm, pen)) for gm in maps) == [0, 1, 2]


def test_octic_has_one_double_pencil(octic):
    P, C, data = octic
    cls, maps = tetragonal_report(C, 0, data)
    assert cls.surface_betti == [20, 64, 90, 64, 20]
    assert len(maps) == 1 and maps[0].certificate["multiplicity"] == 2
    x, y, z = P.ring.gens()
    assert _matches(C, maps[0], plane_pencil_in_canonical(C, x, z))


def test_four_nodal_sextic_has_five_pencils():
    P = fixtures.load_curve("sextic4nodes")
    C = canonical_ideal(P)
    cls, maps = tetragonal_report(C, 0)
    assert C.genus == 6 and cls.variant == "delpezzo" and len(maps) == 5
    x, y, z = P.ring.gens()
    pencils = [plane_pencil_in_canonical(C, a, b) for a, b in ((y, z), (x, z), (x, y), (x - y, y - z))]
    pencils.append(plane_pencil_in_canonical(C, x * y - y * z, x * z - y * z))
    hits = sorted(next(i for i, pen in enumerate(pencils) if _matches(C, gm, pen)) for gm in maps)
    assert hits == [0, 1, 2, 3, 4]


def test_bielliptic_cone():
    C = fixtures.bielliptic_genus6(0)
    cls, maps = tetragonal_report(C, 0)
    assert cls.variant == "elliptic_cone" and cls.vertex is not None
    (gm,) = maps
    assert map_degree(C.ideal, gm.num, gm.den, 10) == 4


def test_genus10_is_goneric_tetragonal(genus10):
    _, C, data = genus10
    assert classify_tetragonal(C, data).variant == "goneric"


def test_pentagonal_curve_is_outside_the_window(genus9):
    _, C, data = genus9
    with pytest.raises(NotTetragonalWindow):
        classify_tetragonal(C, data)
