"""Polynomial ring arithmetic, gcd/lcm, fraction reduction."""

import random
from fractions import Fraction

import pytest

from locspan import (
    MINUS_INFINITY,
    QQ,
    Polynomial,
    PrimeField,
    monic,
    poly_gcd,
    poly_lcm,
    reduce_fraction,
)
from locspan.exactalg import divides, exact_div, format_polynomial, try_exact_div

from support import const, random_nonzero_polynomial, random_polynomial, variables


def test_addition_cancels():
    y1, y2, _ = variables(3)
    assert (y1 + y2) + (-y2) == y1


def test_multiplication_by_zero():
    y1, _, _ = variables(3)
    assert y1 * const(0, 3) == const(0, 3)
    assert (y1 * const(0, 3)).is_zero()


def test_binomial_identity():
    y1, y2, _ = variables(3)
    assert (y1 - y2) * (y1 + y2) == y1 * y1 - y2 * y2


def test_arith_rejects_mismatched_ambient():
    y1 = Polynomial.variable(0, 3, QQ)
    z1 = Polynomial.variable(0, 4, QQ)
    with pytest.raises(ValueError):
        y1 + z1
    with pytest.raises(ValueError):
        y1 * Polynomial.variable(0, 3, PrimeField(5))


def test_total_degree():
    y1, y2, y3 = variables(3)
    assert (y1 * y2 + y3).total_degree() == 2
    assert Polynomial.zero(3, QQ).total_degree() == MINUS_INFINITY
    assert (y1 ** 3).total_degree() == 3


def test_homogeneity():
    y1, y2, y3 = variables(3)
    p = y1 ** 2 + y2 * y3
    assert p.is_homogeneous() and p.homogeneous_degree() == 2
    assert not (y1 + const(1, 3)).is_homogeneous()
    zero = Polynomial.zero(3, QQ)
    assert zero.is_homogeneous()


def test_evaluate():
    y1, y2, _ = variables(3)
    assert (y1 * y2).evaluate((2, 3, 0)) == 6
    assert (y1 - y1).evaluate((17, -4, 9)) == 0
    F2 = PrimeField(2)
    p = Polynomial.variable(0, 3, F2) ** 2 + Polynomial.variable(1, 3, F2)
    assert p.evaluate((1, 1, 1)) == 0


def test_evaluate_rejects_bad_point():
    y1, _, _ = variables(3)
    with pytest.raises(ValueError):
        y1.evaluate((1, 2))


def test_gcd_difference_of_squares():
    y1, y2, _ = variables(3)
    g = poly_gcd(y1 * y1 - y2 * y2, y1 - y2)
    assert g == y1 - y2
    assert divides(g, y1 * y1 - y2 * y2)
    assert divides(g, y1 - y2)


def test_gcd_with_zero_normalizes():
    y1, _, _ = variables(3)
    assert poly_gcd(Polynomial.zero(3, QQ), y1.scale(3)) == y1


def test_gcd_coprime_variables():
    y1, y2, _ = variables(3)
    assert poly_gcd(y1, y2).is_one()


def test_lcm():
    y1, y2, _ = variables(3)
    assert poly_lcm(y1, y1) == y1
    assert poly_lcm(y1, y2) == y1 * y2
    lcm = poly_lcm(y1 * (y1 + y2), y1)
    assert lcm == y1 * (y1 + y2)
    assert divides(y1 * (y1 + y2), lcm) and divides(y1, lcm)


def test_lcm_rejects_zero():
    y1, _, _ = variables(3)
    with pytest.raises(ValueError):
        poly_lcm(y1, Polynomial.zero(3, QQ))


def test_reduce_fraction():
    y1, y2, _ = variables(3)
    rf = reduce_fraction(y1 * y2, y1)
    assert rf.numerator == y2 and rf.denominator.is_one()

    rf = reduce_fraction(Polynomial.zero(3, QQ), y1 + y2)
    assert rf.numerator.is_zero() and rf.denominator.is_one()

    num = y2 * (y1 - y2)
    den = y1 * (y1 - y2)
    rf = reduce_fraction(num, den)
    assert rf.numerator == y2 and rf.denominator == y1
    # cross-multiplication: reduced value equals the original quotient
    assert rf.numerator * den == rf.denominator * num


def test_reduce_fraction_zero_denominator():
    y1, _, _ = variables(3)
    with pytest.raises(ZeroDivisionError):
        reduce_fraction(y1, Polynomial.zero(3, QQ))


def test_ring_axioms_random():
    rng = random.Random(101)
    for _ in range(60):
        a = random_polynomial(rng, 3)
        b = random_polynomial(rng, 3)
        c = random_polynomial(rng, 3)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_gcd_lcm_product_random():
    rng = random.Random(202)
    for _ in range(40):
        a = random_nonzero_polynomial(rng, 3)
        b = random_nonzero_polynomial(rng, 3)
        g = poly_gcd(a, b)
        assert divides(g, a) and divides(g, b)
        lcm = poly_lcm(a, b)
        product = a * b
        # a*b agrees with gcd*lcm up to the unit lc(a)*lc(b)
        unit = product.leading_coefficient()
        assert product == (g * lcm).scale(unit)


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(303)
    for _ in range(40):
        a = random_polynomial(rng, 3)
        b = random_polynomial(rng, 3)
        point = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_reduce_fraction_idempotent():
    rng = random.Random(404)
    for _ in range(30):
        h = random_polynomial(rng, 3)
        k = random_nonzero_polynomial(rng, 3)
        rf = reduce_fraction(h, k)
        again = reduce_fraction(rf.numerator, rf.denominator)
        assert again == rf


def test_homogeneous_product_degrees_add():
    rng = random.Random(505)
    y = variables(3)
    for _ in range(30):
        a = sum((yi.scale(rng.randint(-2, 2)) for yi in y),
                Polynomial.zero(3, QQ))
        b = sum((y[i] * y[j] for i in range(3) for j in range(3)
                 if rng.random() < 0.4), Polynomial.zero(3, QQ))
        if a.is_zero() or b.is_zero():
            continue
        prod = a * b
        assert prod.is_homogeneous()
        assert prod.homogeneous_degree() == (
            a.homogeneous_degree() + b.homogeneous_degree())


def test_prime_field_canonical_representatives():
    F5 = PrimeField(5)
    assert F5.normalize(-3) == 2
    assert F5.normalize(Fraction(2, 3)) == (2 * pow(3, -1, 5)) % 5
    assert F5.sub(1, 4) == 2
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_gcd_lcm_over_prime_field():
    rng = random.Random(606)
    F5 = PrimeField(5)
    for _ in range(30):
        a = random_nonzero_polynomial(rng, 3, field=F5, coeff_range=(0, 4))
        b = random_nonzero_polynomial(rng, 3, field=F5, coeff_range=(0, 4))
        g = poly_gcd(a, b)
        assert divides(g, a) and divides(g, b)
        product = a * b
        unit = product.leading_coefficient()
        assert product == (g * poly_lcm(a, b)).scale(unit)
    y1 = Polynomial.variable(0, 3, F5)
    y2 = Polynomial.variable(1, 3, F5)
    assert poly_gcd(y1 * y1 - y2 * y2, y1 - y2) == y1 - y2


def test_monic_and_exact_division():
    y1, y2, _ = variables(3)
    p = (y1 + y2).scale(Fraction(3, 2))
    assert monic(p) == y1 + y2
    assert exact_div(y1 * y1 - y2 * y2, y1 + y2) == y1 - y2
    assert try_exact_div(y1 * y1 + y2, y1 + y2) is None
    with pytest.raises(ValueError):
        exact_div(y1 * y1 + y2, y1 + y2)


def test_extend_appends_variables():
    y1, y2, _ = variables(3)
    p = y1 * y2 + 1
    q = p.extend(5)
    assert q.nvars == 5
    assert q.total_degree() == 2
    assert format_polynomial(q) == format_polynomial(p)


def test_format_uses_grevlex_descending():
    y1, y2, y3 = variables(3)
    assert str(y3 - y1) == "-y1 + y3"
    assert str(y1 ** 2 - 2 * y2 * y3 + 1) == "y1^2 - 2*y2*y3 + 1"
    assert str(Polynomial.zero(3, QQ)) == "0"
