import random
from fractions import Fraction

import pytest

from cfentropy import kernels
from cfentropy.kernels import CHAN, DECIMAL, GAUSS, NCF, RENYI, backends

CASES = [(DECIMAL, 0), (GAUSS, 0), (CHAN, 2), (CHAN, 7), (NCF, 1), (NCF, 4), (RENYI, 2), (RENYI, 6)]
BACKENDS = backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("kind,param", CASES)
def test_backends_agree(kind, param):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(kind * 100 + param)
    for _ in range(30):
        q = 1 << 300
        p = rng.getrandbits(300) | 1
        assert py.orbit_digits(kind, param, p, q, 150) == cy.orbit_digits(kind, param, p, q, 150)
        ds, _, _, _ = py.orbit_digits(kind, param, p, q, 60)
        A = py.compose(kind, param, ds)
        assert A == cy.compose(kind, param, ds)
        a, b, c, d = A
        lo, hi = sorted([Fraction(b, d), Fraction(a + b, c + d)])
        args = (kind, param, lo.numerator, lo.denominator, True, hi.numerator, hi.denominator, False, 10**6)
        assert py.refine_depth(*args) == cy.refine_depth(*args)
        assert py.right_digit(kind, param, lo.numerator, lo.denominator) == \
            cy.right_digit(kind, param, lo.numerator, lo.denominator)


@pytest.mark.parametrize("kind,param", CASES)
def test_compose_normalization_keeps_the_map(kind, param):
    rng = random.Random(param + 17)
    for impl in BACKENDS.values():
        p, q = rng.getrandbits(200) | 1, 1 << 200
        ds, _, _, _ = impl.orbit_digits(kind, param, p, q, 40)
        a, b, c, d = impl.compose(kind, param, ds, True)
        A, B, C, D = impl.compose(kind, param, ds, False)
        assert a * D == A * d and b * C == B * c and a * B == A * b
        t = Fraction(1, 3)
        assert (a * t + b) / (c * t + d) == (A * t + B) / (C * t + D)


@pytest.mark.parametrize("impl", list(BACKENDS.values()), ids=list(BACKENDS))
def test_step_reduces_chan_fractions(impl):
    d, p, q = impl.step(CHAN, 2, 3, 8)
    assert (d, Fraction(p, q)) == (1, Fraction(1, 3))


@pytest.mark.parametrize("impl", list(BACKENDS.values()), ids=list(BACKENDS))
def test_orbit_flags_zero_hit(impl):
    ds, p, q, hit = impl.orbit_digits(GAUSS, 0, 2, 5, 10)
    assert ds == [2, 2] and hit
    ds, p, q, hit = impl.orbit_digits(DECIMAL, 0, 1, 2, 3)
    assert ds == [5, 0, 0] and hit


@pytest.mark.parametrize("impl", list(BACKENDS.values()), ids=list(BACKENDS))
def test_chan_digit_powers(impl):
    for l in (2, 3, 10):
        for a in range(20):
            assert impl.chan_digit(l, 1, l**a) == (a, l**a)
            assert impl.chan_digit(l, 2, 2 * l**a + 1)[0] == a
