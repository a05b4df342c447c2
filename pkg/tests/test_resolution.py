from math import comb

import pytest

from gonalis.fields import GF, QQ
from gonalis.fixtures import rational_normal_curve, reference_tables
from gonalis.poly import PolyRing
from gonalis.resolution import (BettiTable, betti_via_koszul, canonical_table_violations, linear_colength,
                                linear_strand, minimal_free_resolution, strand_blocks)

TABLES = reference_tables()


def test_koszul_complex_of_two_variables():
    ring = PolyRing(QQ, 2)
    R = minimal_free_resolution(ring.gens(), ring)
    assert R.is_complex() and R.is_minimal()
    assert R.betti_table().rows() == [[1, 2, 1]]


def test_twisted_cubic_resolution():
    ring, ideal = rational_normal_curve(3, GF(10007))
    R = minimal_free_resolution(ideal, ring)
    table = R.betti_table()
    assert len(R.differentials) == 2
    assert (table[1, 2], table[2, 3]) == (3, 2)
    assert betti_via_koszul(ideal, ring) == table


def test_scroll_has_no_quadratic_blocks():
    ring, ideal = rational_normal_curve(4, GF(10007))
    blocks = strand_blocks(minimal_free_resolution(ideal, ring))
    assert all(not idx for idx in blocks.quadratic_index.values())
    assert all(b.ncols == 0 or b.nrows == 0 for b in blocks.B.values())


def test_genus7_sextic_table(sextic):
    _, C, data = sextic
    table = betti_via_koszul(C.ideal, C.ring, genus=7)
    assert table.rows() == TABLES["sextic3nodes"]["rows"]
    assert data.betti_table() == table
    assert canonical_table_violations(table, 7) == []


def test_genus6_general_rows(genus6):
    C, data = genus6
    assert data.betti_table().rows() == TABLES["genus6_general"]["rows"]


def test_genus9_goneric_rows(genus9):
    _, C, data = genus9
    assert data.betti_table().rows() == TABLES["genus9_goneric"]["rows"]
    assert linear_colength(data.betti_table()) == 3


@pytest.mark.parametrize("name, colength", [
    ("genus7_colength2_small", 2), ("genus6_trigonal_or_quintic", 1), ("genus6_general", 2), ("genus10", 2),
])
def test_linear_colength_of_reference_tables(name, colength):
    assert linear_colength(BettiTable.from_rows(TABLES[name]["rows"])) == colength


@pytest.mark.parametrize("name", ["sextic3nodes", "genus9_goneric", "genus9_octic", "genus10", "genus12"])
def test_reference_tables_are_consistent(name):
    entry = TABLES[name]
    g = entry["genus"]
    table = BettiTable.from_rows(entry["rows"], g)
    assert table[1, 2] == comb(g - 2, 2)
    assert canonical_table_violations(table, g) == []


def test_violations_are_detected():
    rows = [row[:] for row in TABLES["sextic3nodes"]["rows"]]
    rows[1][2] += 1
    assert canonical_table_violations(BettiTable.from_rows(rows, 7), 7)


def test_linear_strand_matches_full_resolution():
    ring, ideal = rational_normal_curve(5, GF(10007))
    strand = linear_strand(ideal, ring)
    assert [m.ncols for m in strand] == [10, 20, 15, 4]
    for a, b in zip(strand, strand[1:]):
        assert a.compose(b).is_zero()
