import pytest

from gonalis.fields import GF, QQ
from gonalis.fixtures import minors2, rational_normal_curve, scroll_matrix
from gonalis.groebner import (annihilator_of_cokernel, groebner_basis, hilbert_data, ideal_equal,
                              ideal_quotient, intersect_ideals, saturate_by_element, saturate_wrt,
                              syzygies)
from gonalis.poly import PolyRing


@pytest.fixture
def ring3():
    return PolyRing(QQ, 3)


def test_monomial_ideal_is_its_own_basis(ring3):
    x0, _, _ = ring3.gens()
    assert groebner_basis([x0 * x0]).gens == [x0 * x0]


def test_linear_ideal_reduced_basis(ring3):
    x0, x1, x2 = ring3.gens()
    gb = groebner_basis([x0 - x1, x1 - x2])
    assert sorted(gb.gens, key=str) == sorted([x0 - x2, x1 - x2], key=str)


def test_twisted_cubic():
    ring, ideal = rational_normal_curve(3, GF(10007))
    gb = groebner_basis(ideal, ring)
    assert len(gb) == 3
    assert hilbert_data(gb) == (1, 3)


def test_hilbert_data_line_and_unit(ring3):
    x0, _, _ = ring3.gens()
    assert hilbert_data(groebner_basis([x0])) == (1, 1)
    assert hilbert_data(groebner_basis([ring3.one()])) == (-1, 0)


def test_koszul_syzygy(ring3):
    x0, x1, _ = ring3.gens()
    (s,) = syzygies([[x0], [x1]], ring3)
    assert s[0] * x0 + s[1] * x1 == ring3.zero()
    assert {str(s[0]), str(s[1])} in ({"x1", "-x0"}, {"-x1", "x0"})


def test_domain_has_no_syzygy(ring3):
    x0, _, _ = ring3.gens()
    assert syzygies([[x0]], ring3) == []


def test_second_koszul_differential(ring3):
    x0, x1, x2 = ring3.gens()
    syz = syzygies([[x0], [x1], [x2]], ring3)
    assert len(syz) == 3
    for s in syz:
        assert s[0] * x0 + s[1] * x1 + s[2] * x2 == ring3.zero()


def test_colon_and_saturation(ring3):
    x0, x1, _ = ring3.gens()
    assert ideal_quotient([x0 * x0], x0).gens == [x0]
    assert saturate_wrt([x0 * x0, x0 * x1], [x0, x1]).gens == [x0]
    embedded = intersect_ideals([[x0], [x0 * x0, x0 * x1, x1 * x1]], ring3)
    assert saturate_wrt(embedded.gens, [x0, x1]).gens == [x0]


def test_saturating_prime_by_nonmember_is_identity(ring3):
    x0, x1, x2 = ring3.gens()
    prime = [x0 * x2 - x1 * x1]
    assert ideal_equal(saturate_by_element(prime, x0).gens, prime)


def test_annihilator_of_diagonal_cokernel(ring3):
    x0, x1, _ = ring3.gens()
    z = ring3.zero()
    ann = annihilator_of_cokernel([[x0, z], [z, x1]])
    assert ann.gens == [x0 * x1]


def test_annihilator_of_scroll_matrix_contains_minors():
    ring = PolyRing(GF(10007), 4)
    phi = scroll_matrix(ring, [3])
    ann = annihilator_of_cokernel(phi)
    assert all(ann.contains(m) for m in minors2(phi))
