from fractions import Fraction

import flint
import pytest

from picdyn import algebraic as alg
from picdyn.algebraic import NumberType, classify_number

from conftest import LEHMER


def P(*cs):
    """Polynomial from coefficients, highest degree first."""
    return flint.fmpz_poly(list(reversed(cs)))


def test_sturm_counts():
    f = P(1, 0, -2)  # t^2 - 2
    assert alg.count_real_roots(f) == 2
    assert alg.count_real_roots(f, Fraction(0), None) == 1
    assert alg.count_real_roots(f, Fraction(1), Fraction(2)) == 1
    assert alg.count_real_roots(P(1, 0, 1)) == 0


def test_isolation_separates_close_roots():
    f = P(1, 0, -2) * P(100, 0, -201)  # sqrt 2 and sqrt 2.01
    iv = alg.isolate_real_roots(f)
    assert len(iv) == 4
    for lo, hi in iv:
        assert alg.count_real_roots(f, lo, hi) == 1


def test_largest_root_golden():
    lam = alg.largest_real_root(P(1, -3, 1))
    assert abs(float(lam) - (3 + 5 ** 0.5) / 2) < 1e-12
    assert lam > Fraction(2618, 1000) and lam < Fraction(2619, 1000)
    assert lam.compare(Fraction(3)) == -1


def test_largest_root_picks_factor():
    lam = alg.largest_real_root(P(1, -3, 1) * P(1, -1))
    assert lam.min_poly == P(1, -3, 1)


def test_lehmer_number():
    lam = alg.largest_real_root(flint.fmpz_poly(LEHMER))
    assert abs(float(lam) - 1.17628081825991750654) < 1e-12


@pytest.mark.parametrize(
    "poly, expected",
    [
        (P(1, -3, 1), NumberType.RECIPROCAL_QUADRATIC),
        (flint.fmpz_poly(LEHMER), NumberType.SALEM),
        (P(1, -1, -1), NumberType.PISOT),  # golden ratio, not reciprocal
        (P(1, 0, 1), None),
        (P(1, 1, 1), None),
        (P(1, 0, -2), NumberType.OTHER),  # conjugate -sqrt 2 lies outside the unit disc
    ],
)
def test_classify_number(poly, expected):
    if expected is None:
        with pytest.raises(alg.PolynomialError):
            classify_number(poly)
    else:
        assert classify_number(poly) == expected


def test_integer_above_one_is_pisot():
    assert classify_number(P(1, -2)) == NumberType.PISOT


def test_plastic_number_is_pisot():
    assert classify_number(P(1, 0, -1, -1)) == NumberType.PISOT


def test_root_of_unity_tag():
    assert classify_number(P(1, -1)) == NumberType.ROOT_OF_UNITY


def test_non_monic_rejected():
    with pytest.raises(alg.PolynomialError):
        classify_number(P(2, -3, 1))


def test_cyclotomic_detection():
    assert alg.is_cyclotomic(flint.fmpz_poly.cyclotomic(12)) == 12
    assert alg.is_cyclotomic(P(1, -3, 1)) == 0
    f = flint.fmpz_poly.cyclotomic(3) ** 2 * flint.fmpz_poly.cyclotomic(10) * P(1, -3, 1)
    rest, found = alg.strip_cyclotomic(f)
    assert rest == P(1, -3, 1)
    assert found == [(3, 2), (10, 1)]


def test_trace_polynomial():
    # t^2 - 3t + 1 = t (s - 3) with s = t + 1/t
    assert alg.trace_polynomial(P(1, -3, 1)) == flint.fmpq_poly([-3, 1])


def test_field_arithmetic_golden():
    lam = alg.largest_real_root(P(1, -3, 1))
    F = alg.NumberField(lam)
    x = F.gen
    assert x * x == 3 * x - 1
    assert x * x.inverse() == F(1)
    assert (x - F(3)).sign() == -1
    assert (x - F(Fraction(5, 2))).sign() == 1
