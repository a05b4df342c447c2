import pytest

from gonalis import fixtures
from gonalis.curvein import (ConstantMap, HyperellipticImage, HyperellipticModel, InputError, NonOrdinaryInput,
                             canonical_ideal, check_singularities, curve_hilbert_data, delta_genus, format_plane,
                             map_degree, newton_interior_points, parse_curve_text, plane_pencil_in_canonical)
from gonalis.fields import QQ


def test_sextic_file_parses():
    P = fixtures.load_curve("sextic3nodes")
    assert P.field is QQ and P.degree == 6
    assert delta_genus(P) == (3, 7)
    check_singularities(P)


def test_plane_format_roundtrip():
    P = fixtures.nodal_sextic(1)
    Q = parse_curve_text(format_plane(P))
    assert Q.F == P.F and [s.point for s in Q.singularities] == [s.point for s in P.singularities]


@pytest.mark.parametrize("text, line", [
    ("field GF 7\nplane 3\nF = x^3 + y^3 + z^3\nbogus\n", 4),
    ("plane 3\n\nF = x^3 + y^2\n", 3),
    ("field RR\nplane 3\n", 1),
    ("canonical 4\nideal:\nx0*x1 - x2^2\nx0 + + \n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError) as info:
        parse_curve_text(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_declaration():
    with pytest.raises(InputError):
        parse_curve_text("field QQ\n")


def test_cusp_is_rejected():
    P = parse_curve_text("plane 3\nF = y^2*z - x^3\nsing (0:0:1) mult 2\n")
    with pytest.raises(NonOrdinaryInput):
        check_singularities(P)


def test_wrong_multiplicity_is_rejected():
    P = parse_curve_text("plane 3\nF = y^2*z - x^3 - x^2*z\nsing (0:0:1) mult 3\n")
    with pytest.raises(NonOrdinaryInput):
        check_singularities(P)


def test_canonical_sextic(sextic):
    _, C, _ = sextic
    assert C.genus == 7 and len(C.quadrics()) == 10
    assert curve_hilbert_data(C.ideal, C.ring) == (1, 12)


def test_node_projection_has_degree_four(sextic):
    P, C, _ = sextic
    x, y, z = P.ring.gens()
    num, den = plane_pencil_in_canonical(C, y, z)
    assert map_degree(C.ideal, num, den, 12) == 4
    with pytest.raises(ConstantMap):
        map_degree(C.ideal, num, num, 12)


def test_smooth_point_projection_of_quartic_is_trigonal():
    P = fixtures.smooth_quartic(0)
    C = canonical_ideal(P)
    assert C.genus == 3
    x0, x1, x2 = C.ring.gens()
    assert map_degree(C.ideal, x0, x1) == 4


def test_quintic_with_triple_point_is_hyperelliptic():
    P = fixtures.singular_plane_curve(5, [((0, 0, 1), 3)], seed=2)
    assert delta_genus(P) == (3, 3)
    with pytest.raises(HyperellipticImage):
        canonical_ideal(P)


def test_hyperelliptic_file():
    H = fixtures.load_curve("hyperelliptic_g3")
    assert isinstance(H, HyperellipticModel) and H.genus == 3


def test_newton_genus_counts():
    assert len(newton_interior_points(fixtures.genus10_plane().F)) == 10
    assert len(newton_interior_points(fixtures.genus12_plane().F)) == 12
