import random

import pytest

from gonalis import fixtures
from gonalis.curvein import map_degree, plane_pencil_in_canonical
from gonalis.fields import GF
from gonalis.groebner import groebner_basis
from gonalis.invariants import w1d_count
from gonalis.scrollar import (NotGoneric, RankMismatch, SyzygyPoint, fibers_agree, gonal_map, goneric_pipeline,
                              is_one_generic, mobius_between, phi_from_syzygy, rnc_parametrize, scroll_check,
                              scroll_of_pencil, scrollar_locus, syzygy_rank)


def test_genus6_locus_is_five_lines(genus6):
    C, data = genus6
    locus = scrollar_locus(data.strand[1], 2, seed=0)
    assert (locus.dim, locus.degree) == (1, 5) == (1, w1d_count(6))


def test_off_locus_syzygy_is_rejected(genus6):
    C, data = genus6
    psi = data.strand[1]
    F = C.field
    rng = random.Random(3)
    y = tuple(F.random_element(rng, 1000) for _ in range(psi.ncols))
    assert syzygy_rank(y, psi) > 3
    with pytest.raises(RankMismatch):
        phi_from_syzygy(SyzygyPoint(y, 2, F), psi, C.ideal)


def test_general_genus6_is_not_goneric(genus6):
    C, data = genus6
    with pytest.raises(NotGoneric):
        goneric_pipeline(C, 0, data)


@pytest.mark.parametrize("f, seed, cone", [(2, 0, False), (3, 1, False), (4, 2, False), (3, 5, True)])
def test_scroll_check(f, seed, cone):
    phi, kind = fixtures.random_scroll(f, seed, cone=cone)
    assert is_one_generic(phi, seed) or cone
    report = scroll_check(phi, seed)
    assert report["ok"], report
    assert report["vertex_dim"] == (0 if cone else -1)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_rnc_parametrization(m):
    ring, ideal = fixtures.rational_normal_curve(m, GF(10007))
    change = fixtures.random_linear_change(ring, random.Random(m))
    ideal = [f.substitute(change) for f in ideal]
    par = rnc_parametrize(ideal, ring, seed=m)
    F = par.ring.field
    lifted = [f.change_ring(ring.with_field(F)) for f in ideal] if F != ring.field else ideal
    assert all(f.degree() == m for f in par.forms)
    for s in range(1, 4):
        pt = par.point(F.convert(s), F.convert(7 * s + 2))
        assert any(not F.is_zero(c) for c in pt)
        assert all(F.is_zero(f.evaluate(pt)) for f in lifted)


def test_goneric_genus10(genus10):
    P, C, data = genus10
    gm = goneric_pipeline(C, 0, data)
    assert gm.gonality == 4 and gm.certificate["locus_hilbert"] == [1, 5]
    assert gm.scroll.codim == 6
    x, y, z = P.ring.gens()
    assert fibers_agree(C.ideal, (gm.num, gm.den), plane_pencil_in_canonical(C, y, z), seed=1, samples=2)


def test_goneric_genus9(genus9):
    _, C, data = genus9
    gm = goneric_pipeline(C, 0, data)
    assert gm.gonality == 5 and gm.certificate["one_generic"]


def test_pencil_scroll_of_node_projection(sextic):
    P, C, _ = sextic
    x, y, z = P.ring.gens()
    num, den = plane_pencil_in_canonical(C, y, z)
    scroll = scroll_of_pencil(C, num, den)
    assert scroll.codim == 3
    gb = groebner_basis(C.ideal, C.ring)
    assert all(gb.contains(f) for f in scroll.minor_ideal)
    assert map_degree(C.ideal, *scroll.structure_map, 12) == 4


def test_different_node_pencils_do_not_match(sextic):
    P, C, _ = sextic
    x, y, z = P.ring.gens()
    first = plane_pencil_in_canonical(C, y, z)
    second = plane_pencil_in_canonical(C, x, z)
    assert mobius_between(C.ideal, first, first) is not None
    assert not fibers_agree(C.ideal, first, second)


def test_hyperelliptic_gonal_map():
    assert gonal_map(fixtures.load_curve("hyperelliptic_g3")).gonality == 2
