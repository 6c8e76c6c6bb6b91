"""Entropy of the expansion maps: Rohlin quadrature, closed forms and the
Shannon-McMillan-Breiman estimate."""
from __future__ import annotations

import math
import statistics
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial

from scipy.integrate import IntegrationWarning, quad

from .cylinders import cylinder_of_point, compose_block
from .exact import ExactInterval, MobiusMap, sign
from .expansions import (
    DomainError,
    ExpansionFamily,
    _ratio_minus_one,
    _measure_constant,
    digits,
    log_measure_of_interval,
)
from .sampling import bits_for, draw_point, parallel_map, stream

DELTA = 1e-3


class ConvergenceError(ArithmeticError):
    pass


class UnsupportedFamilyError(ValueError):
    pass


class RenyiBoundViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class EntropyResult:
    family: ExpansionFamily
    value: float
    method: str
    error_estimate: float = 0.0


def dilog(x: float, tol: float = 1e-14) -> float:
    """``Li_2(x) = sum x**k / k**2`` on ``[0, 1]``."""
    if not 0 <= x <= 1:
        raise DomainError(f"dilog is implemented on [0, 1], got {x}")
    if x == 0:
        return 0.0
    if x == 1:
        return math.pi**2 / 6
    if x > 0.5:
        return math.pi**2 / 6 - math.log(x) * math.log1p(-x) - dilog(1 - x, tol)
    terms = []
    p, k = x, 1
    while True:
        t = p / (k * k)
        terms.append(t)
        # remaining terms are below t * x / (1 - x) <= t
        if t < tol * 1e-3:
            break
        k += 1
        p *= x
    return math.fsum(terms)


def _log_moment(w, upper: float, tol: float) -> tuple[float, float]:
    """``int_0^upper -log(x) w(x) dx`` for ``w`` smooth on ``[0, upper]``.

    The piece ``[0, DELTA*upper]`` is integrated after ``x = exp(-u)``.
    """
    d = DELTA * upper
    opts = dict(epsabs=tol / 4, epsrel=0.0, limit=500)
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            v1, e1 = quad(lambda x: -math.log(x) * w(x), d, upper, **opts)
            v2, e2 = quad(lambda u: u * w(math.exp(-u)) * math.exp(-u), -math.log(d), math.inf, **opts)
        except IntegrationWarning as exc:
            raise ConvergenceError(str(exc)) from exc
    return v1 + v2, e1 + e2


def _chan_digit_mean(l: int, tol: float) -> tuple[float, float]:
    """``sum_i i G((l^-(i+1), l^-i]) = sum_{j>=1} G((0, l^-j])``, with tail bound."""
    F = ExpansionFamily("chan", l)
    C = _measure_constant(F)
    terms = []
    j = 1
    while True:
        r = _ratio_minus_one(F, Fraction(0), Fraction(1, l**j))
        t = C * math.log1p(float(r))
        terms.append(t)
        # G((0, y]) <= C (l-1)^2 y / l, so the tail is geometric with ratio 1/l
        tail = C * (l - 1) ** 2 / l * l ** -(j + 1) * l / (l - 1)
        if tail < tol * 1e-3:
            return math.fsum(terms), tail
        j += 1


def entropy_quadrature(F: ExpansionFamily, tol: float = 1e-10) -> EntropyResult:
    """Rohlin's formula ``h = int log|T'| dmu`` by adaptive quadrature."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    k, p = F.kind, F.param
    if k == "decimal":
        return EntropyResult(F, math.log(10), "quadrature", 0.0)
    if k == "renyi":
        # substitute y = 1 - x to move the singularity to 0
        c = F.normalizer
        m, err = _log_moment(lambda y: c / (p - y), 1.0, tol)
        value, err = math.log(p) + 2 * m, 2 * err
    elif k == "chan":
        m, err = _log_moment(F.density, 1.0, tol)
        s, tail = _chan_digit_mean(p, tol)
        value = 2 * m - s * math.log(p) - math.log(p - 1)
        err = 2 * err + tail * math.log(p)
    else:
        upper = 1 / math.sqrt(p) if k == "theta" else 1.0
        m, err = _log_moment(F.density, upper, tol)
        value = 2 * m + (math.log(p) if k == "ncf" else 0.0)
        err = 2 * err
    if err > tol:
        raise ConvergenceError(f"quadrature error {err:.3g} exceeds tol {tol:.3g} for {F}")
    return EntropyResult(F, value, "quadrature", err)


@lru_cache(maxsize=None)
def entropy_value(F: ExpansionFamily) -> float:
    """Reference entropy (quadrature) used for predictions and bit budgets."""
    return entropy_quadrature(F).value


def entropy_closed_form(F: ExpansionFamily, tol: float = 1e-14) -> EntropyResult:
    k, p = F.kind, F.param
    if k == "decimal":
        return EntropyResult(F, math.log(10), "closed_form", 0.0)
    if k == "gauss":
        return EntropyResult(F, math.pi**2 / (6 * math.log(2)), "closed_form", 1e-15)
    if k == "renyi":
        denom = -math.log1p(-1 / p)
        value = math.log(p) + 2 * dilog(1 / p, tol) / denom
        return EntropyResult(F, value, "closed_form", 2 * tol / denom)
    raise UnsupportedFamilyError(f"no closed form is used for {F}; use entropy_quadrature")


def _smb_sample(F: ExpansionFamily, n: int, seed: int, bits: int, index: int):
    x, rejected = draw_point(seed, index, bits, (F,), n, F.upper)
    c = cylinder_of_point(F, x, n)
    return -log_measure_of_interval(F, c.interval) / n, rejected


def _mean_and_error(values: list[float]) -> tuple[float, float]:
    mean = math.fsum(values) / len(values)
    if all(v == values[0] for v in values):
        return values[0], 0.0
    return mean, statistics.stdev(values) / math.sqrt(len(values))


def entropy_smb(F: ExpansionFamily, n: int, samples: int, seed: int, workers: int = 1) -> EntropyResult:
    """``-(1/n) log mu(A_n(x))`` averaged over sampled points."""
    if n < 1 or samples < 1:
        raise ValueError("n and samples must be positive")
    bits = bits_for(n, entropy_value(F))
    out = parallel_map(partial(_smb_sample, F, n, seed, bits), range(samples), workers)
    mean, se = _mean_and_error([v for v, _ in out])
    return EntropyResult(F, mean, "smb", se)


def _random_block(F: ExpansionFamily, n: int, rng) -> list[int]:
    """Admissible block: half the time the digits of a random point, otherwise
    floor + geometric digits (so large digits also get exercised)."""
    if rng.random() < 0.5:
        x = Fraction(rng.getrandbits(64 * n + 64) | 1, 1 << (64 * n + 64))
        if x < F.upper:
            ds = digits(F, x, n).digits
            if len(ds) == n:
                return list(ds)
    top = 9 if F.kind == "decimal" else None
    out = []
    for _ in range(n):
        d = F.digit_floor + min(int(rng.expovariate(0.25)), 60)
        out.append(min(d, top) if top is not None else d)
    return out


def _random_point(F: ExpansionFamily, rng) -> Fraction:
    while True:
        t = Fraction(rng.getrandbits(64), 1 << 64)
        if t < F.upper:
            return t


def distortion_ratio(A: MobiusMap, t, r):
    """``|u'(t)| / |u'(r)|`` for ``u = A``, exactly."""
    return ((A.c * r + A.d) / (A.c * t + A.d)) ** 2


def renyi_condition_check(F: ExpansionFamily, n: int, trials: int, seed: int) -> float:
    """Largest sampled distortion ratio of ``n``-fold inverse branches.

    Each trial also tries the domain endpoints, where the ratio peaks.
    Raises ``RenyiBoundViolation`` if any ratio exceeds the family's bound.
    """
    bound = F.renyi_bound
    worst = Fraction(0)
    for i in range(trials):
        rng = stream(seed, i, "renyi")
        A = compose_block(F, _random_block(F, n, rng))
        t, r = _random_point(F, rng), _random_point(F, rng)
        for a, b in ((t, r), (r, t), (Fraction(0), F.upper), (F.upper, Fraction(0))):
            q = distortion_ratio(A, a, b)
            if sign(q - bound) > 0:
                raise RenyiBoundViolation(f"{F}: ratio {float(q)} exceeds {float(bound)}")
            if q > worst:
                worst = q
    return float(worst)
