import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cfentropy.exact import (
    ExactInterval,
    MobiusMap,
    PoleError,
    QuadraticNumber,
    exact_log,
    floor_exact,
    interval_image,
    mobius_apply,
    mobius_compose,
    quad,
    sign,
)

I2 = MobiusMap.identity()


def test_floor_examples():
    assert floor_exact(Fraction(3, 2)) == 1
    assert floor_exact(QuadraticNumber.sqrt(2)) == 1
    assert floor_exact(quad(Fraction(1, 2), Fraction(1, 2), 5)) == 1
    assert floor_exact(Fraction(-3, 2)) == -2
    assert floor_exact(-QuadraticNumber.sqrt(2)) == -2


def test_sqrt_of_square_is_rational():
    assert QuadraticNumber.sqrt(9) == 3
    assert isinstance(QuadraticNumber.sqrt(9), Fraction)
    # sqrt(12) = 2 sqrt(3)
    r = QuadraticNumber.sqrt(12)
    assert r * r == 12


def test_compose_examples():
    G1 = MobiusMap(0, 1, 1, 1)
    assert mobius_compose(I2, G1) == G1
    assert mobius_compose(G1, G1) == MobiusMap(1, 1, 1, 2)
    assert mobius_apply(G1 @ G1, Fraction(0)) == Fraction(1, 2)
    G2 = MobiusMap(0, 1, 1, 2)
    assert mobius_apply(G2 @ G2, Fraction(0)) == Fraction(2, 5)


def test_apply_examples():
    assert mobius_apply(I2, Fraction(7, 3)) == Fraction(7, 3)
    assert mobius_apply(MobiusMap(0, 1, 1, 2), Fraction(0)) == Fraction(1, 2)
    assert mobius_apply(MobiusMap(1, 0, 1, 2), Fraction(0)) == 0
    with pytest.raises(PoleError):
        mobius_apply(MobiusMap(1, 0, 1, -2), Fraction(2))


def test_apply_returns_reduced_rational():
    y = mobius_apply(MobiusMap(2, 0, 0, 4), Fraction(3))
    assert y == Fraction(3, 2) and y.denominator == 2


def test_zero_determinant_rejected():
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)


def test_interval_image_examples():
    unit = ExactInterval(Fraction(0), Fraction(1), True, True)
    assert interval_image(I2, unit) == unit
    im = interval_image(MobiusMap(0, 1, 1, 2), unit)
    assert (im.lo, im.hi) == (Fraction(1, 3), Fraction(1, 2))
    im = interval_image(MobiusMap(0, 1, 2, 2), unit)
    assert (im.lo, im.hi) == (Fraction(1, 4), Fraction(1, 2))


def test_interval_image_transports_flags():
    half_open = ExactInterval(Fraction(0), Fraction(1), True, False)
    im = interval_image(MobiusMap(0, 1, 1, 2), half_open)
    # decreasing map: the closed end 0 goes to the right endpoint
    assert (im.lo_closed, im.hi_closed) == (False, True)


def test_interval_image_pole_error():
    with pytest.raises(PoleError):
        interval_image(MobiusMap(1, 0, 1, -1), ExactInterval(Fraction(0), Fraction(2)))


def test_quadratic_float_no_cancellation():
    # (1 + sqrt 2)^-40 = a + b sqrt 2 with huge a, b of opposite sign
    x = Fraction(1)
    u = 1 / (1 + QuadraticNumber.sqrt(2))
    for _ in range(40):
        x = x * u
    assert math.isclose(float(x), (math.sqrt(2) - 1) ** 40, rel_tol=1e-12)


def test_exact_log_big_rational():
    x = Fraction(3**5000, 2**9000)
    assert math.isclose(exact_log(x), 5000 * math.log(3) - 9000 * math.log(2), rel_tol=1e-14)


small = st.integers(-50, 50)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def mobius():
    return (
        st.tuples(small, small, small, small)
        .filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)
        .map(lambda m: MobiusMap(*m))
    )


@given(mobius(), mobius(), fracs)
def test_compose_is_application(A, B, x):
    try:
        lhs = mobius_apply(mobius_compose(A, B), x)
        rhs = mobius_apply(A, mobius_apply(B, x))
    except PoleError:
        return
    assert lhs == rhs


@given(mobius(), mobius())
def test_determinant_multiplicative(A, B):
    assert (A @ B).det == A.det * B.det


@given(fracs, fracs, st.sampled_from([2, 3, 5, 6, 7, 10, 1001]))
def test_quadratic_floor_brackets(a, b, s):
    q = quad(a, b, s)
    f = floor_exact(q)
    assert f <= q < f + 1


@given(fracs, fracs, fracs, fracs, st.sampled_from([2, 3, 5]))
def test_quadratic_field_closed(a, b, c, d, s):
    x, y = quad(a, b, s), quad(c, d, s)
    assert (x + y) - y == x
    if y != 0:
        assert (x * y) / y == x


@given(fracs, st.sampled_from([2, 3, 5, 7]))
def test_quadratic_sign_matches_float(r, s):
    q = QuadraticNumber.sqrt(s) - r
    assert sign(q) == (1 if math.sqrt(s) > r else -1)


@given(st.fractions(min_value=-(10**6), max_value=10**6))
def test_rational_normalization(x):
    y = Fraction(x.numerator * 7, x.denominator * 7)
    assert y == x and y.denominator > 0 and math.gcd(y.numerator, y.denominator) == 1


unit_fracs = st.lists(st.fractions(0, 1, max_denominator=100), min_size=4, max_size=4, unique=True)


@settings(max_examples=200)
@given(mobius(), unit_fracs)
def test_image_preserves_containment(A, pts):
    lo_o, lo_i, hi_i, hi_o = sorted(pts)
    outer, inner = ExactInterval(lo_o, hi_o, True, True), ExactInterval(lo_i, hi_i, True, True)
    try:
        big, sub = interval_image(A, outer), interval_image(A, inner)
    except PoleError:
        return
    assert sub.strict_subset(big)
