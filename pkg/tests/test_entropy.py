import math

import mpmath
import pytest
from scipy.special import spence

from oracles import FROZEN_ENTROPY, mp_entropy, mp_ncf_closed_form

from cfentropy.entropy import (
    ConvergenceError,
    RenyiBoundViolation,
    UnsupportedFamilyError,
    dilog,
    entropy_closed_form,
    entropy_quadrature,
    entropy_smb,
    renyi_condition_check,
)
from cfentropy.expansions import DomainError, chan, decimal, gauss, ncf, renyi, theta

GRID = (1, 3, 5, 10, 50, 100, 1000)
CHAN_GRID = (2, 3, 5, 10, 50, 100, 200)
RENYI_GRID = (2, 3, 5, 10, 50, 100, 1000)


def test_dilog_examples():
    assert dilog(0) == 0
    assert dilog(1) == math.pi**2 / 6
    assert dilog(0.5) == pytest.approx(math.pi**2 / 12 - math.log(2) ** 2 / 2, abs=1e-15)


def test_dilog_half_against_long_series():
    s = math.fsum(0.5**k / k**2 for k in range(1, 200))
    assert abs(dilog(0.5) - s) < 1e-15


@pytest.mark.parametrize("x", [i / 40 for i in range(41)])
def test_dilog_reflection(x):
    lhs = dilog(x) + dilog(1 - x)
    rhs = math.pi**2 / 6 - (math.log(x) * math.log1p(-x) if 0 < x < 1 else 0.0)
    assert abs(lhs - rhs) < 1e-13


@pytest.mark.parametrize("x", [1e-9, 0.01, 0.1, 0.3, 0.5, 0.51, 0.7, 0.9, 0.999, 1 - 1e-9])
def test_dilog_against_references(x):
    # scipy's spence(z) is Li2(1 - z)
    assert abs(dilog(x) - spence(1 - x)) < 1e-14
    with mpmath.workdps(30):
        assert abs(dilog(x) - float(mpmath.polylog(2, x))) < 1e-14


@pytest.mark.parametrize("x", [-0.1, 1.5])
def test_dilog_domain(x):
    with pytest.raises(DomainError):
        dilog(x)


def _all_families():
    out = [decimal(), gauss()]
    out += [chan(l) for l in CHAN_GRID]
    out += [theta(s) for s in GRID] + [ncf(N) for N in GRID]
    out += [renyi(N) for N in RENYI_GRID]
    return out


@pytest.mark.parametrize("F", _all_families(), ids=str)
def test_quadrature_matches_frozen_reference(F):
    r = entropy_quadrature(F, 1e-10)
    ref = float(FROZEN_ENTROPY[(F.kind, F.param)])
    assert abs(r.value - ref) < 1e-10
    assert r.error_estimate <= 1e-10
    assert r.value > 0


@pytest.mark.parametrize("F", [chan(3), theta(5), ncf(10), renyi(3)], ids=str)
def test_quadrature_matches_live_mpmath(F):
    assert abs(entropy_quadrature(F).value - float(mp_entropy(F.kind, F.param))) < 1e-10


@pytest.mark.parametrize("N", GRID)
def test_ncf_against_dilog_form(N):
    # integrating the NCF Rohlin integral by parts gives log N - 2 Li2(-1/N) / log((N+1)/N)
    assert abs(entropy_quadrature(ncf(N)).value - float(mp_ncf_closed_form(N))) < 1e-10


@pytest.mark.parametrize("F", [decimal(), gauss()] + [renyi(N) for N in RENYI_GRID], ids=str)
def test_closed_form_agrees_with_quadrature(F):
    assert abs(entropy_quadrature(F, 1e-10).value - entropy_closed_form(F).value) < 1e-8


def test_closed_form_examples():
    assert entropy_closed_form(renyi(2)).value == pytest.approx(math.pi**2 / (6 * math.log(2)), abs=1e-14)
    assert round(entropy_closed_form(renyi(10)).value, 5) == 4.25052
    assert round(entropy_closed_form(gauss()).value, 5) == 2.37314
    assert entropy_quadrature(decimal()).value == math.log(10)


@pytest.mark.parametrize("F", [chan(2), theta(3), ncf(3)], ids=str)
def test_closed_form_unsupported(F):
    with pytest.raises(UnsupportedFamilyError):
        entropy_closed_form(F)


@pytest.mark.parametrize("N", GRID)
def test_theta_and_ncf_entropies_coincide(N):
    assert abs(entropy_quadrature(theta(N)).value - entropy_quadrature(ncf(N)).value) < 1e-8


def test_quadrature_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        entropy_quadrature(gauss(), 0)
    with pytest.raises(ConvergenceError):
        entropy_quadrature(chan(2), 1e-18)


def test_chan_entropy_decreases_in_l():
    vals = [entropy_quadrature(chan(l)).value for l in range(2, 60)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_smb_decimal_is_exact():
    for n in (1, 7, 200):
        r = entropy_smb(decimal(), n, 5, seed=3)
        assert r.value == math.log(10)
        assert r.error_estimate == 0.0


@pytest.mark.parametrize("F", [gauss(), ncf(3), renyi(2), chan(2), theta(2)], ids=str)
def test_smb_small_run_is_close(F):
    # quadratic orbits are slow, so Theta gets a shorter block
    r = entropy_smb(F, 120 if F.kind == "theta" else 400, 8, seed=11)
    h = entropy_quadrature(F).value
    assert abs(r.value - h) / h < 0.05
    assert r.error_estimate > 0


def test_smb_independent_of_worker_count():
    a = entropy_smb(ncf(2), 150, 6, seed=5, workers=1)
    b = entropy_smb(ncf(2), 150, 6, seed=5, workers=3)
    assert a == b


def test_smb_argument_checks():
    with pytest.raises(ValueError):
        entropy_smb(gauss(), 0, 3, 1)


@pytest.mark.parametrize(
    "F,bound",
    [(chan(2), 4), (chan(5), 25), (ncf(5), 1.44), (ncf(1), 4), (renyi(2), 4),
     (renyi(10), (10 / 9) ** 2), (theta(3), (4 / 3) ** 2), (gauss(), 4), (decimal(), 1)],
    ids=str,
)
def test_renyi_condition_bounds(F, bound):
    worst = renyi_condition_check(F, 6, 150 if F.kind == "theta" else 300, seed=2)
    assert 1 <= worst <= bound * (1 + 1e-15)


def test_renyi_condition_endpoint_ratio_is_sharp():
    # for NCF the inverse branch with the smallest digit nearly attains the bound
    assert renyi_condition_check(ncf(5), 1, 200, seed=4) > 1.3


def test_renyi_condition_detects_a_broken_bound(monkeypatch):
    from cfentropy import expansions

    monkeypatch.setattr(expansions.ExpansionFamily, "renyi_bound", property(lambda self: 1))
    with pytest.raises(RenyiBoundViolation):
        renyi_condition_check(gauss(), 3, 20, seed=1)


def test_renyi_condition_is_deterministic():
    assert renyi_condition_check(chan(3), 4, 50, 77) == renyi_condition_check(chan(3), 4, 50, 77)
