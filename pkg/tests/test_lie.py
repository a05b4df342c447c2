import pytest

from gonalis import fixtures
from gonalis.fields import GF
from gonalis.lie import (CharacteristicObstruction, lie_algebra_of, lie_report, module_dims_from_weights,
                         sl2_summand)
from gonalis.scrollar import mobius_between


def test_weights_to_modules():
    assert module_dims_from_weights([1, -1, 2, 0, -2]) == [2, 3]
    assert module_dims_from_weights([0, 0]) == [1, 1]


def test_conic_gives_sl2():
    ring, ideal = fixtures.rational_normal_curve(2)
    L = lie_algebra_of(ideal, ring)
    assert L.dim == 3 and L.is_closed()
    assert sl2_summand(L).module_dims == [3]


def test_twisted_cubic():
    ring, ideal = fixtures.rational_normal_curve(3)
    report = lie_report(ideal, ring)
    assert (report["lie_dim"], report["module_dims"]) == (3, [4])


def test_segre_quadric():
    ring, ideal = fixtures.segre_quadric()
    report = lie_report(ideal, ring)
    assert report["lie_dim"] == 6 and report["module_dims"] == [2, 2] and report["closed"]
    assert report["two_dimensional"]


@pytest.mark.parametrize("kind", [[1, 2], [2, 2], [1, 3], [3, 3], [1, 1, 2]])
def test_scroll_triples(kind):
    phi = fixtures.scroll_of_type(kind, seed=4)
    ideal = fixtures.minors2(phi)
    L = lie_algebra_of(ideal, phi.ring)
    t = sl2_summand(L, seed=1)
    assert t.check() and L.is_closed()
    assert sorted(t.module_dims) == sorted(e + 1 for e in kind)


def test_ruling_from_weights_is_the_scroll_pencil():
    phi = fixtures.scroll_of_type([2, 2], seed=2)
    ring = phi.ring
    ideal = fixtures.minors2(phi)
    report = lie_report(ideal, ring)
    num, den = ring.parse(report["map"]["num"]), ring.parse(report["map"]["den"])
    assert mobius_between(ideal, (num, den), (phi.entries[0][0], phi.entries[1][0])) is not None


def test_small_characteristic_is_refused():
    ring, ideal = fixtures.rational_normal_curve(3, GF(7))
    with pytest.raises(CharacteristicObstruction):
        sl2_summand(lie_algebra_of(ideal, ring))


def test_genus10_scroll(genus10):
    from gonalis.scrollar import goneric_pipeline
    _, C, data = genus10
    scroll = goneric_pipeline(C, 0, data).scroll
    report = lie_report(scroll.minor_ideal, C.ring)
    assert (report["lie_dim"], report["module_dims"]) == (14, [2, 3, 5])
    assert report["closed"]
