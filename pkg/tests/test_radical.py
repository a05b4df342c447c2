from fractions import Fraction

import pytest

from gonalis import fixtures
from gonalis.curvein import parse_curve_text
from gonalis.fields import GF, QQ
from gonalis.radical import (CharacteristicUnsupported, DegreeTooHigh, NotApplicable, RadicalParametrization,
                             ValidationFailed, const, exact_identity, param, radical_parametrization, radparam,
                             root, solve_by_radicals, to_json, validate)

F = GF(10007)


def _exprs(coeffs):
    """Monic coefficient expressions ``c_0 .. c_{d-1}`` from polynomials in t (constant first)."""
    t = param()
    out = []
    for c in coeffs[:-1]:
        e = const(0)
        for a in reversed(c):
            e = e * t + const(Fraction(a))
        out.append(e)
    return out


@pytest.mark.parametrize("coeffs, flags", [
    ([[0, -1], [0], [1]], None),                       # u^2 - t
    ([[0, -1], [0], [0], [1]], {"cubic_p": True}),     # u^3 - t
    ([[1, 0, 1], [0], [0, 1], [0], [1]], {"quartic_q": True}),   # u^4 + t u^2 + t^2 + 1
    ([[2, 1], [-1], [1]], None),
    ([[1], [0, 1], [0], [1]], None),                    # u^3 + t u + 1
])
def test_roots_satisfy_their_polynomial(coeffs, flags):
    u = solve_by_radicals(_exprs(coeffs), 0, flags)
    for field in (QQ, F):
        cs = [[field.convert(a) for a in c] for c in coeffs]
        assert exact_identity(cs, u, field, 3)


def test_square_root_shape():
    u = solve_by_radicals(_exprs([[0, -1], [0], [1]]))
    names_roots = u.roots()
    assert len(names_roots) == 1 and names_roots[0].k == 2


def test_quartic_tower_depth():
    u = solve_by_radicals(_exprs([[1], [0, 1], [2], [0], [1]]))
    assert len(u.roots()) <= 6 and all(r.k in (2, 3) for r in u.roots())


def test_degree_and_characteristic_guards():
    with pytest.raises(DegreeTooHigh):
        solve_by_radicals(_exprs([[1]] * 5 + [[1]]))
    with pytest.raises(CharacteristicUnsupported):
        solve_by_radicals(_exprs([[0, -1], [0], [1]]), characteristic=3)
    with pytest.raises(DegreeTooHigh):
        root(5, param())


def test_exact_validation_on_elliptic_curve():
    P = parse_curve_text("field GF 10007\nplane 3\nF = y^2*z - x^3 + x*z^2\n")
    t = param()
    y = root(2, t * t * t - t)
    R = RadicalParametrization(t, y, y, F, 2)
    report = validate(P, R, samples=10)
    assert report["max_residual"] == "0" and report["samples"] == 10
    with pytest.raises(ValidationFailed):
        validate(P, RadicalParametrization(t, y + const(F.one), y, F, 2), samples=5)


def test_hyperelliptic_radparam():
    out = radparam(fixtures.load_curve("hyperelliptic_g3"), samples=5, precision=40)
    assert out["gonality"] == 2 and float(out["validation"]["max_residual"]) < 1e-20


def test_sextic_over_rationals():
    P = fixtures.load_curve("sextic3nodes")
    out = radparam(P, seed=0, samples=20, precision=64)
    assert out["gonality_bounds"] == [4, 4] and out["degree"] == 4
    assert float(out["validation"]["max_residual"]) < 1e-20


def test_perturbed_tree_fails():
    P = fixtures.load_curve("sextic3nodes")
    x, y, z = P.ring.gens()
    R = radical_parametrization(P, y, z)
    bad = RadicalParametrization(R.x, -R.y, R.u, R.field, R.degree)
    with pytest.raises(ValidationFailed):
        validate(P, bad, samples=3, precision=64)


def test_json_tree_names_shared_roots():
    P = fixtures.load_curve("sextic3nodes")
    x, y, z = P.ring.gens()
    R = radical_parametrization(P, y, z)
    out = R.to_json()
    assert out["tower"] and {"x", "y", "tower", "degree"} <= set(out)


def test_high_gonality_is_refused():
    P = fixtures.smooth_plane_curve(7, seed=1)
    with pytest.raises(NotApplicable) as info:
        radparam(P)
    assert info.value.tag == "gonality_above_4" and info.value.bounds == [6, 6]


def test_plane_quintic_tag():
    with pytest.raises(NotApplicable) as info:
        radparam(fixtures.load_curve("quintic_smooth_g6"))
    assert info.value.tag == "plane_quintic" and info.value.bounds == [4, 4]
