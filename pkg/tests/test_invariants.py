import pytest

from gonalis.invariants import (brill_noether_rho, clifford_of_divisor, clifford_window, gonality_upper_bound,
                                plane_gonality_bounds, scroll_betti_row, w1d_count, w1d_curve_genus_formula)


@pytest.mark.parametrize("g, r, d, rho", [(6, 1, 4, 0), (7, 1, 5, 1), (7, 1, 4, -1), (10, 1, 6, 0)])
def test_brill_noether_number(g, r, d, rho):
    assert brill_noether_rho(g, r, d) == rho


def test_generic_gonality_and_clifford():
    assert [gonality_upper_bound(g) for g in (6, 7, 10, 12)] == [4, 5, 6, 7]
    assert clifford_window(2) == [4, 5]
    assert clifford_of_divisor(4, 2) == 2
    with pytest.raises(ValueError):
        clifford_window(-1)


@pytest.mark.parametrize("g, d, count", [(6, 4, 5), (8, 5, 14), (4, 3, 2), (10, None, 42)])
def test_pencil_counts_in_even_genus(g, d, count):
    assert w1d_count(g, d) == count


def test_pencil_count_rejects_odd_genus_and_wrong_degree():
    with pytest.raises(ValueError):
        w1d_count(7)
    with pytest.raises(ValueError):
        w1d_count(6, 3)
    assert w1d_curve_genus_formula(7) == 43


@pytest.mark.parametrize("f, row", [
    (4, [10, 20, 15, 4]),
    (6, [21, 70, 105, 84, 35, 6]),
    (8, [36, 168, 378, 504, 420, 216, 63, 8]),
])
def test_eagon_northcott_rows(f, row):
    assert scroll_betti_row(f) == row


def test_plane_bounds():
    exact = plane_gonality_bounds(6, 2, 3)
    assert (exact.as_list(), exact.certificate) == ([4, 4], "OS-exact")
    loose = plane_gonality_bounds(9, 5, 18)
    assert (loose.as_list(), loose.certificate) == ([2, 4], "none")
    assert loose.contains(3) and not exact.contains(3)
