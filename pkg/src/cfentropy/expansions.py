"""The six expansion families and their digit dynamics.

Every family is a piecewise Mobius interval map ``T`` with full branches.
Digits are floor-type branch indices, so each branch cell is half-open; the
closed end is the image of 0 under the inverse branch.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .exact import (
    ExactInterval,
    ExactNumber,
    MobiusMap,
    QuadraticNumber,
    exact_log,
    floor_exact,
    squarefree_split,
)

KINDS = ("decimal", "gauss", "chan", "theta", "ncf", "renyi")

_KERNEL_CODES = {
    "decimal": kernels.DECIMAL,
    "gauss": kernels.GAUSS,
    "chan": kernels.CHAN,
    "ncf": kernels.NCF,
    "renyi": kernels.RENYI,
}


class DomainError(ValueError):
    pass


class UndefinedDigitError(ValueError):
    """The point is where the map has no digit (0 for Gauss-like maps, 1 for Renyi)."""


class InadmissibleDigitError(ValueError):
    pass


@dataclass(frozen=True)
class ExpansionFamily:
    """One of decimal, gauss, chan(l), theta(s), ncf(N), renyi(N)."""

    kind: str
    param: int = 0

    def __post_init__(self):
        k, p = self.kind, self.param
        if k not in KINDS:
            raise ValueError(f"unknown family {k!r}")
        if k in ("decimal", "gauss"):
            if p:
                raise ValueError(f"{k} takes no parameter")
        elif k == "chan" and p < 2:
            raise ValueError(f"chan needs l >= 2, got {p}")
        elif k in ("theta", "ncf") and p < 1:
            raise ValueError(f"{k} needs a parameter >= 1, got {p}")
        elif k == "renyi" and p < 2:
            raise ValueError(f"renyi needs N >= 2, got {p}")

    def __str__(self):
        return self.kind if self.kind in ("decimal", "gauss") else f"{self.kind}({self.param})"

    @property
    def label(self) -> str:
        return str(self)

    @property
    def kernel_code(self) -> int | None:
        return _KERNEL_CODES.get(self.kind)

    @property
    def sqrt_s(self) -> ExactNumber:
        return QuadraticNumber.sqrt(self.param)

    @property
    def theta(self) -> ExactNumber | None:
        if self.kind != "theta":
            return None
        r = self.sqrt_s
        return 1 / r if isinstance(r, Fraction) else r / self.param

    @property
    def is_rational(self) -> bool:
        """True when orbits of rationals stay rational."""
        return self.kind != "theta" or squarefree_split(self.param)[1] == 1

    @property
    def upper(self) -> ExactNumber:
        return self.theta if self.kind == "theta" else Fraction(1)

    @property
    def domain(self) -> ExactInterval:
        return ExactInterval(Fraction(0), self.upper, True, False)

    @property
    def digit_floor(self) -> int:
        return {"decimal": 0, "gauss": 1, "chan": 0}.get(self.kind, self.param)

    @property
    def normalizer(self) -> float:
        """Constant in front of the rational part of the invariant density."""
        k, p = self.kind, self.param
        if k == "decimal":
            return 1.0
        if k == "gauss":
            return 1 / math.log(2)
        if k == "chan":
            return (p - 1) ** 2 / math.log(p * p / (2 * p - 1))
        if k == "theta":
            return 1 / math.log1p(1 / p)
        if k == "ncf":
            return 1 / math.log1p(1 / p)
        return 1 / -math.log1p(-1 / p)

    @property
    def renyi_bound(self) -> Fraction:
        """Distortion constant C bounding ``|u_n'(t)| / |u_n'(r)|``."""
        k, p = self.kind, self.param
        if k == "decimal":
            return Fraction(1)
        if k == "gauss":
            return Fraction(4)
        if k == "chan":
            return Fraction(p * p)
        if k == "theta":
            return (1 + Fraction(1, p)) ** 2
        if k == "ncf":
            return Fraction(p + 1, p) ** 2
        return Fraction(p, p - 1) ** 2

    def density(self, x: float) -> float:
        k, p, c = self.kind, self.param, self.normalizer
        if k == "decimal":
            return 1.0
        if k == "gauss":
            return c / (1 + x)
        if k == "chan":
            return c / (((p - 1) * x + 1) * ((p - 1) * x + p))
        if k == "theta":
            t = 1 / math.sqrt(p)
            return c * t / (1 + t * x)
        if k == "ncf":
            return c / (x + p)
        return c / (x + p - 1)


def decimal() -> ExpansionFamily:
    return ExpansionFamily("decimal")


def gauss() -> ExpansionFamily:
    return ExpansionFamily("gauss")


def chan(l: int) -> ExpansionFamily:
    return ExpansionFamily("chan", l)


def theta(s: int) -> ExpansionFamily:
    return ExpansionFamily("theta", s)


def ncf(N: int) -> ExpansionFamily:
    return ExpansionFamily("ncf", N)


def renyi(N: int) -> ExpansionFamily:
    return ExpansionFamily("renyi", N)


_FAMILY_RE = re.compile(r"^\s*([a-z]+)\s*(?:[:(=]\s*(\d+)\s*\)?)?\s*$")


def parse_family(text: str) -> ExpansionFamily:
    """Parse ``"gauss"``, ``"chan:2"``, ``"ncf(3)"`` and similar."""
    m = _FAMILY_RE.match(text.lower())
    if not m:
        raise ValueError(f"cannot parse family {text!r}")
    kind, param = m.group(1), m.group(2)
    if kind == "rcf":
        kind = "gauss"
    return ExpansionFamily(kind, int(param) if param is not None else 0)


@dataclass(frozen=True)
class DigitBlock:
    family: ExpansionFamily
    digits: tuple = ()
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            check_digit(self.family, d)

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def check_digit(F: ExpansionFamily, d) -> None:
    if not isinstance(d, int) or d < F.digit_floor or (F.kind == "decimal" and d > 9):
        raise InadmissibleDigitError(f"{d!r} is not an admissible digit for {F}")


def _check_point(F: ExpansionFamily, x: ExactNumber) -> None:
    if x < 0 or x > F.upper:
        raise DomainError(f"{x} is outside the domain of {F}")
    if x == 1 and F.kind == "decimal":
        raise DomainError(f"{x} is outside the domain of {F}")


def is_undefined(F: ExpansionFamily, x: ExactNumber) -> bool:
    if F.kind == "decimal":
        return False
    if F.kind == "renyi":
        return x == 1
    return x == 0


def _chan_digit(l: int, x: ExactNumber) -> int:
    if isinstance(x, Fraction):
        return kernels.chan_digit(l, x.numerator, x.denominator)[0]
    # quadratic point: float estimate, then exact correction
    a = max(0, int(-math.log(float(x)) / math.log(l)) - 1)
    while a > 0 and x > Fraction(1, l**a):
        a -= 1
    while x <= Fraction(1, l ** (a + 1)):
        a += 1
    return a


def branch_index(F: ExpansionFamily, x: ExactNumber) -> int:
    """First digit of ``x``."""
    if isinstance(x, int):
        x = Fraction(x)
    _check_point(F, x)
    if is_undefined(F, x):
        raise UndefinedDigitError(f"{F} has no digit at {x}")
    k, p = F.kind, F.param
    if k == "decimal":
        return floor_exact(10 * x)
    if k == "gauss":
        return floor_exact(1 / x)
    if k == "chan":
        return _chan_digit(p, x)
    if k == "theta":
        return floor_exact(F.sqrt_s / x)
    if k == "ncf":
        return floor_exact(p / x)
    return floor_exact(p / (1 - x))


def apply_map(F: ExpansionFamily, x: ExactNumber) -> ExactNumber:
    """``T(x)`` in exact arithmetic."""
    if isinstance(x, int):
        x = Fraction(x)
    d = branch_index(F, x)
    k, p = F.kind, F.param
    if k == "decimal":
        return 10 * x - d
    if k == "gauss":
        return 1 / x - d
    if k == "chan":
        return (Fraction(1, p**d) / x - 1) / (p - 1)
    if k == "theta":
        return 1 / x - F.theta * d
    if k == "ncf":
        return p / x - d
    return p / (1 - x) - d


def inverse_branch(F: ExpansionFamily, digit: int) -> MobiusMap:
    """The inverse of ``T`` restricted to the cell of ``digit``."""
    check_digit(F, digit)
    k, p = F.kind, F.param
    if k == "decimal":
        return MobiusMap(1, digit, 0, 10)
    if k == "gauss":
        return MobiusMap(0, 1, 1, digit)
    if k == "chan":
        w = p**digit
        return MobiusMap(0, 1, (p - 1) * w, w)
    if k == "theta":
        # 1/(digit*theta + t) scaled by sqrt(s) so entries live in Z[sqrt s]
        r = F.sqrt_s
        if isinstance(r, Fraction):
            r = int(r)
        return MobiusMap(0, r, r, digit)
    if k == "ncf":
        return MobiusMap(0, p, 1, digit)
    return MobiusMap(1, digit - p, 1, digit)


def branch_cell(F: ExpansionFamily, digit: int) -> ExactInterval:
    """Set of points whose first digit is ``digit``."""
    from .exact import interval_image

    return interval_image(inverse_branch(F, digit), F.domain)


def digits(F: ExpansionFamily, x: ExactNumber, n: int) -> DigitBlock:
    """First ``n`` digits of ``x``; ``truncated`` is set if the orbit ends early."""
    if isinstance(x, int):
        x = Fraction(x)
    _check_point(F, x)
    code = F.kernel_code
    if code is not None and isinstance(x, Fraction):
        ds, _, _, _ = kernels.orbit_digits(code, F.param, x.numerator, x.denominator, n)
    else:
        ds = digits_generic(F, x, n)
    return DigitBlock(F, ds, truncated=len(ds) < n)


def digits_generic(F: ExpansionFamily, x: ExactNumber, n: int) -> list[int]:
    """Reference orbit loop on exact numbers (no integer kernel)."""
    out = []
    for _ in range(n):
        if is_undefined(F, x):
            break
        out.append(branch_index(F, x))
        x = apply_map(F, x)
    return out


def orbit_is_clean(F: ExpansionFamily, x: ExactNumber, n: int) -> bool:
    """True if ``x`` has ``n`` digits and none of ``x, T x, ..., T^{n-1} x``
    sits on a branch-cell boundary (equivalently no iterate ``T^k x``,
    ``1 <= k <= n``, equals 0)."""
    if isinstance(x, int):
        x = Fraction(x)
    if x <= 0 or x >= F.upper:
        return False
    code = F.kernel_code
    if code is not None and isinstance(x, Fraction):
        ds, _, _, hit = kernels.orbit_digits(code, F.param, x.numerator, x.denominator, n)
        return len(ds) == n and not hit
    for _ in range(n):
        if is_undefined(F, x):
            return False
        x = apply_map(F, x)
        if x == 0:
            return False
    return True


def log_abs_derivative(F: ExpansionFamily, x: float) -> float:
    """``log|T'(x)|`` in floating point."""
    k, p = F.kind, F.param
    if k == "decimal":
        return math.log(10)
    if not (x > 0) or (k == "renyi" and not x < 1):
        raise DomainError(f"log|T'| is singular at {x} for {F}")
    if k in ("gauss", "theta"):
        return -2 * math.log(x)
    if k == "ncf":
        return math.log(p) - 2 * math.log(x)
    if k == "renyi":
        return math.log(p) - 2 * math.log1p(-x)
    a = math.floor(math.log(1 / x) / math.log(p))
    return -a * math.log(p) - math.log(p - 1) - 2 * math.log(x)


def _affine(F: ExpansionFamily):
    """``(alpha, beta)`` with density proportional to ``1 / (alpha + beta x)``."""
    k, p = F.kind, F.param
    if k == "gauss":
        return 1, 1
    if k == "theta":
        return 1, F.theta
    if k == "ncf":
        return p, 1
    if k == "renyi":
        return p - 1, 1
    raise ValueError(k)


def _ratio_minus_one(F: ExpansionFamily, a, b):
    """``phi(b)/phi(a) - 1`` where the measure of ``[a, b]`` is ``C log(phi(b)/phi(a))``.

    Written so that no cancellation occurs for nearby ``a`` and ``b``.
    """
    if F.kind == "chan":
        u = F.param - 1
        return u * u * (b - a) / ((u * a + 1) * (u * b + F.param))
    alpha, beta = _affine(F)
    return beta * (b - a) / (alpha + beta * a)


def _measure_constant(F: ExpansionFamily) -> float:
    k, p = F.kind, F.param
    if k == "gauss":
        return 1 / math.log(2)
    if k == "chan":
        return 1 / math.log(p * p / (2 * p - 1))
    return F.normalizer


def _endpoints(I):
    if isinstance(I, ExactInterval):
        return I.lo, I.hi
    lo, hi = I
    return lo, hi


def measure_of_interval(F: ExpansionFamily, I) -> float:
    """Invariant measure of an interval (``ExactInterval`` or ``(lo, hi)``)."""
    lo, hi = _endpoints(I)
    floats = isinstance(lo, float) or isinstance(hi, float)
    # float endpoints are checked against the rounded upper end, with a few ulps of slack
    upper = float(F.upper) * (1 + 4e-16) if floats else F.upper
    if lo < 0 or hi > upper or lo > hi:
        raise DomainError(f"[{lo}, {hi}] is not inside the domain of {F}")
    if F.kind == "decimal":
        return float(hi - lo)
    if floats:
        if F.kind == "theta":
            t = 1 / math.sqrt(F.param)
            r = t * (hi - lo) / (1 + t * lo)
        else:
            r = _ratio_minus_one(F, lo, hi)
        return _measure_constant(F) * math.log1p(r)
    r = _ratio_minus_one(F, lo, hi)
    return _measure_constant(F) * math.log1p(float(r))


def log_measure_of_interval(F: ExpansionFamily, I) -> float:
    """``log`` of the invariant measure, valid far below the double range."""
    lo, hi = _endpoints(I)
    if not lo < hi:
        raise DomainError("degenerate interval has no log-measure")
    if F.kind == "decimal":
        w = Fraction(hi - lo)
        k = round(math.log10(w.denominator))
        if w.numerator == 1 and w.denominator == 10**k:
            # decimal cylinders: the log-measure is exactly -k log 10
            return -k * math.log(10)
        return exact_log(w)
    r = _ratio_minus_one(F, lo, hi)
    C = _measure_constant(F)
    lr = exact_log(r)
    if lr > -20:
        return math.log(C * math.log1p(float(r)))
    # log(log1p(r)) = log(r) - r/2 + O(r^2)
    return math.log(C) + lr - 0.5 * math.exp(lr)
