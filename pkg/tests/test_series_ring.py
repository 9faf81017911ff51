import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from sympy import Rational

from hurwitzkit.core.exceptions import DomainException, PoleException
from hurwitzkit.services.series_ring import (
    EXACT, LaurentQRing, RatFuncHbarRing, RationalRing, TruncatedSeries, TruncHbar, TruncHbarRing,
    rational_to_json, series_add, series_exp, series_log, series_mul, to_fraction, univariate
)


def test_to_fraction():
    assert to_fraction(Rational(3, 4)) == Fraction(3, 4)
    assert to_fraction(5) == Fraction(5)
    with pytest.raises(DomainException):
        to_fraction(0.5)


def test_rational_json():
    assert rational_to_json(Fraction(3, 1)) == "3"
    assert rational_to_json(Fraction(-1, 2)) == "-1/2"


def test_weighted_truncation():
    ring = RationalRing()
    p1 = TruncatedSeries(ring, ("p1", "p2"), (1, 2), 3, {(1, 0): 1})
    p2 = p1.variable("p2")
    assert (p1 ** 4).is_zero()
    assert series_mul(p1, p2).coefficient({"p1": 1, "p2": 1}) == 1
    assert (p2 * p2).is_zero()


def test_signature_mismatch():
    a = univariate(RationalRing(), "x", 3, {1: 1})
    b = univariate(RationalRing(), "x", 4, {1: 1})
    with pytest.raises(DomainException):
        a + b


def test_exp_and_log():
    x = univariate(RationalRing(), "x", 6, {1: 1})
    e = series_exp(x)
    assert [e.coefficient((k,)) for k in range(7)] == [Fraction(1, factorial(k)) for k in range(7)]
    g = univariate(RationalRing(), "x", 6, {1: Fraction(2, 3), 2: -1, 5: Fraction(1, 7)})
    assert series_log(series_exp(g)) == g


def test_exp_log_preconditions():
    one_plus_x = univariate(RationalRing(), "x", 4, {0: 1, 1: 1})
    with pytest.raises(DomainException):
        one_plus_x.exp()
    with pytest.raises(DomainException):
        univariate(RationalRing(), "x", 4, {0: 2, 1: 1}).log()
    laurent = univariate(RationalRing(), "x", 2, {-1: 1}, low=-2)
    with pytest.raises(DomainException):
        laurent.exp()


def test_trunc_hbar_inverse_and_exp():
    series = TruncHbar({0: 1, 1: -1})
    inverse = series.inverse(4)
    assert inverse.coeffs == {0: 1, 1: 1, 2: 1, 3: 1}
    assert inverse.prec == 4
    hbar = TruncHbar.hbar_power(1)
    assert hbar.exp(3).coeffs == {0: 1, 1: 1, 2: Fraction(1, 2)}
    assert hbar.inverse(5).coeffs == {-1: 1}
    assert hbar.inverse(5).prec == EXACT
    with pytest.raises(DomainException):
        TruncHbar({0: 1}).exp(3)
    with pytest.raises(PoleException):
        TruncHbar().inverse(3)


def test_trunc_hbar_precision_propagates():
    a = TruncHbar({0: 1, 1: 2}, prec=3)
    b = TruncHbar({1: 1})
    result = a * b
    assert result.prec == 4
    assert result.coeffs == {1: 1, 2: 2}


def test_rational_ring_hbar():
    assert RationalRing(hbar_value=Fraction(1, 3)).hbar() == Fraction(1, 3)
    assert not RationalRing(hbar_value=Fraction(1, 3)).exact
    with pytest.raises(DomainException):
        RationalRing().hbar()


def test_ratfunc_ring():
    ring = RatFuncHbarRing()
    hbar = ring.hbar()
    value = ring.inv(2 - 2 * hbar)
    assert ring.evaluate(value, hbar=Fraction(1, 2)) == 1
    assert "hbar" in ring.to_json(value)["den"]
    with pytest.raises(PoleException):
        ring.inv(0)
    with pytest.raises(PoleException):
        ring.evaluate(value, hbar=1)


def test_laurent_q_ring():
    ring = LaurentQRing()
    value = ring.q() * ring.q() * ring.inv(ring.hbar())
    assert ring.evaluate(value, q=3, hbar=2) == Fraction(9, 2)
    with pytest.raises(DomainException):
        ring.evaluate(value, q=3)


def test_trunc_hbar_ring_from_ratfunc():
    source = RatFuncHbarRing()
    target = TruncHbarRing(5)
    series = target.from_ratfunc(source, source.inv(1 - source.hbar()))
    assert series.coeffs == {e: 1 for e in range(5)}
    assert target.to_json(series)["prec"] == 5
    with pytest.raises(DomainException):
        TruncHbarRing(0)


def test_series_add_cancels():
    x = univariate(RationalRing(), "x", 3, {0: 1, 1: Fraction(1, 2)})
    y = univariate(RationalRing(), "x", 3, {1: Fraction(-1, 2), 3: 2})
    total = series_add(x, y)
    assert total.coefficient((0,)) == 1
    assert total.coefficient((1,)) == 0
    assert total.coefficient((3,)) == 2


def random_ratfunc(ring, rng, degree=2):
    hbar = ring.hbar()
    numer = ring.coerce(rng.choice([-3, -2, -1, 1, 2, 3]))
    denom = ring.coerce(rng.randint(1, 5))
    for i in range(1, degree + 1):
        numer = numer + rng.randint(-5, 5) * hbar ** i
        denom = denom + rng.randint(-3, 3) * hbar ** i
    return numer * ring.inv(denom)


@pytest.mark.parametrize("seed", range(4))
def test_ratfunc_arithmetic_commutes_with_evaluation(seed):
    rng = random.Random(seed)
    ring = RatFuncHbarRing()
    a, b = random_ratfunc(ring, rng), random_ratfunc(ring, rng)
    expression = a * b + a - b * b
    quotient = a * ring.inv(b)
    checked = 0
    while checked < 20:
        point = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        try:
            a_value = ring.evaluate(a, hbar=point)
            b_value = ring.evaluate(b, hbar=point)
        except PoleException:
            continue
        if b_value == 0:
            continue
        assert ring.evaluate(expression, hbar=point) == a_value * b_value + a_value - b_value * b_value
        assert ring.evaluate(quotient, hbar=point) == a_value / b_value
        checked += 1


@pytest.mark.parametrize("seed", range(4))
def test_geometric_expansion_commutes_with_arithmetic(seed):
    rng = random.Random(100 + seed)
    source = RatFuncHbarRing()
    target = TruncHbarRing(6)
    a, b = random_ratfunc(source, rng), random_ratfunc(source, rng)

    def expand(value):
        return target.from_ratfunc(source, value)

    assert expand(a * b) == expand(a) * expand(b)
    assert expand(a + b) == expand(a) + expand(b)


def random_series(ring, rng, coefficient):
    terms = {}
    for exponents in product(range(6), repeat=3):
        if exponents[0] + 2 * exponents[1] + 3 * exponents[2] <= 5 and rng.random() < 0.6:
            terms[exponents] = coefficient(rng)
    return TruncatedSeries(ring, ("p1", "p2", "p3"), (1, 2, 3), 5, terms)


def rational_coefficient(rng):
    return Fraction(rng.randint(-7, 7), rng.randint(1, 5))


HBAR_RING = RatFuncHbarRing()


def ratfunc_coefficient(rng):
    return HBAR_RING.coerce(rational_coefficient(rng)) + HBAR_RING.coerce(rational_coefficient(rng)) * HBAR_RING.hbar()


@pytest.mark.parametrize("ring,coefficient", [
    (RationalRing(), rational_coefficient),
    (HBAR_RING, ratfunc_coefficient),
])
@pytest.mark.parametrize("seed", range(3))
def test_truncated_ring_axioms(ring, coefficient, seed):
    rng = random.Random(seed)
    a, b, c = (random_series(ring, rng, coefficient) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a + (b + c) == (a + b) + c
    assert a * a.one() == a
    assert (a - a).is_zero()
