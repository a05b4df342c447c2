from fractions import Fraction

import pytest

from gonalis import linalg, univariate
from gonalis.fields import GF, QQ, ExtensionField, ZeroDivisor, parse_field
from gonalis.poly import PolyRing, monomials


def test_prime_field_inverse():
    F = GF(7)
    assert F.inv(F.convert(3)) == F.convert(5)


def test_rational_addition():
    assert QQ.add(Fraction(2, 3), Fraction(1, 6)) == Fraction(5, 6)


def test_extension_inverse_of_generator():
    K = ExtensionField(QQ, [-2, 0, 1])
    a = K.gen()
    half_a = K.mul(K.convert(Fraction(1, 2)), a)
    assert K.inv(a) == half_a
    assert K.is_one(K.mul(a, half_a))


def test_extension_zero_divisor_is_reported():
    K = ExtensionField(GF(101), [-1, 0, 1])        # a^2 - 1 = (a-1)(a+1)
    with pytest.raises(ZeroDivisor):
        K.inv(K.sub(K.gen(), K.one))


def test_parse_field_variants():
    assert parse_field("QQ") is QQ
    assert parse_field("GF 10007").p == 10007
    assert parse_field("GF(7)").p == 7
    with pytest.raises(ValueError):
        parse_field("RR")


@pytest.mark.parametrize("matrix, size", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 0),
    ([[0, 0, 0], [0, 0, 0]], 3),
])
def test_nullspace_sizes(matrix, size):
    assert len(linalg.nullspace(matrix, GF(10007), 3)) == size


def test_nullspace_over_rationals():
    (v,) = linalg.nullspace([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], QQ, 2)
    assert v[0] == -v[1] != 0


def test_rref_and_inverse_roundtrip():
    F = GF(10007)
    A = [[2, 3, 1], [4, 1, 5], [7, 7, 2]]
    Ainv = linalg.inverse(A, F)
    assert linalg.matmul(A, Ainv, F) == linalg.identity(3, F)
    rows, piv = linalg.rref(A + [[6, 4, 6]], F, 3)
    assert piv == [0, 1, 2] and len(rows) == 3


def test_polynomial_arithmetic():
    R = PolyRing(QQ, 3)
    x0, x1, x2 = R.gens()
    assert (x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1
    assert (x0 * x0 * x2).evaluate((1, 0, 3)) == 3
    f = R.parse("x0^3 - 2*x1*x2 + 5")
    assert (f + (-f)).is_zero()


def test_parse_and_print_roundtrip():
    R = PolyRing(GF(10007), 3, ["x", "y", "z"])
    f = R.parse("3*x^4*y^2 - (y - z)^2 * x^4 + 7")
    assert R.parse(str(f)) == f


def test_grevlex_leading_term():
    R = PolyRing(QQ, 3)
    f = R.parse("x0*x2^2 + x1^3 + x0^2*x1")
    assert f.lead_exp() == (2, 1, 0)
    assert monomials(3, 2)[0] == (2, 0, 0)


def test_univariate_roots_and_gcd():
    F = GF(10007)
    f = univariate.mul(F, [F.convert(-2), F.one], [F.convert(-5), F.one])
    assert sorted(univariate.roots(F, f)) == [2, 5]
    g = univariate.gcd(F, f, [F.convert(-5), F.one])
    assert univariate.degree(g) == 1
