"""Exact arithmetic: rationals, elements of Q(sqrt s), Mobius maps and intervals.

Rationals are :class:`fractions.Fraction`.  Quadratic numbers ``a + b*sqrt(s)``
are :class:`QuadraticNumber`; every ordering decision on them is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Union

Rational = Fraction


class PoleError(ZeroDivisionError):
    """A Mobius map was evaluated at (or across) its pole."""


@lru_cache(maxsize=None)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    k, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QuadraticNumber:
    """The real number ``a + b*sqrt(s)`` with rational ``a, b`` and squarefree ``s > 1``.

    Instances are immutable.  Arithmetic results with a vanishing irrational
    part collapse to :class:`Fraction`, so callers should use :func:`quad`
    or the operators rather than relying on the concrete result type.
    """

    __slots__ = ("a", "b", "s")

    def __init__(self, a, b, s: int):
        if s < 2 or squarefree_split(s)[0] != 1:
            raise ValueError(f"radicand must be squarefree and > 1, got {s}")
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @staticmethod
    def sqrt(n: int) -> "ExactNumber":
        """Exact square root of a positive integer."""
        k, m = squarefree_split(n)
        if m == 1:
            return Fraction(k)
        return QuadraticNumber(0, k, m)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.s != self.s:
                raise ValueError(f"mixed radicands {self.s} and {other.s}")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return quad(self.a + c[0], self.b + c[1], self.s)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.s)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return quad(self.a - c[0], self.b - c[1], self.s)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return quad(c[0] - self.a, c[1] - self.b, self.s)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        a, b = c
        return quad(self.a * a + self.b * b * self.s, self.a * b + self.b * a, self.s)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.reciprocal()
        out = Fraction(1)
        for _ in range(abs(k)):
            out = base * out
        return out

    def norm(self) -> Fraction:
        """Field norm ``a^2 - s*b^2``; nonzero unless the number is zero."""
        return self.a * self.a - self.b * self.b * self.s

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.s)

    def reciprocal(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt s)")
        return quad(self.a / n, -self.b / n, self.s)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        if c[1] == 0:
            if c[0] == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt s)")
            return quad(self.a / c[0], self.b / c[0], self.s)
        return self * QuadraticNumber(c[0], c[1], self.s).reciprocal()

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return self.reciprocal() * quad(c[0], c[1], self.s)

    # -- ordering ---------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: the larger magnitude wins; equality is impossible
        return sa if self.a * self.a > self.b * self.b * self.s else sb

    def _cmp(self, other) -> int:
        d = self - other
        return d.sign() if isinstance(d, QuadraticNumber) else (d > 0) - (d < 0)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.s) == (other.a, other.b, other.s)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.s))

    def __lt__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __floor__(self):
        return floor_exact(self)

    def __float__(self):
        a, b, s = self.a, self.b, self.s
        if (a >= 0) == (b >= 0):
            return float(a) + float(b) * math.sqrt(s)
        # a - b*sqrt(s) has no cancellation when a and b differ in sign
        if max(abs(a), abs(b)) < 2**500:
            return float(self.norm()) / (float(a) - float(b) * math.sqrt(s))
        return self.sign() * math.exp(exact_log(abs(self)))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadraticNumber({self.a!s}, {self.b!s}, {self.s})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.s})"


ExactNumber = Union[int, Fraction, QuadraticNumber]


def quad(a, b, s: int) -> ExactNumber:
    """Build ``a + b*sqrt(s)``, collapsing to a :class:`Fraction` when ``b == 0``."""
    b = _frac(b)
    if b == 0:
        return _frac(a)
    return QuadraticNumber(a, b, s)


def sign(x: ExactNumber) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def floor_exact(x: ExactNumber) -> int:
    """``floor(x)`` computed without floating point."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    if not isinstance(x, QuadraticNumber):
        raise TypeError(f"not an exact number: {x!r}")
    # floor(b*sqrt(s)) from an integer square root, then fix up by one
    bn, bd = x.b.numerator, x.b.denominator
    r = math.isqrt(bn * bn * x.s)
    if bn >= 0:
        fb = r // bd
    else:
        # -sqrt(M)/bd: ceil of sqrt(M)/bd, negated
        exact = r * r == bn * bn * x.s
        fb = -((r + (0 if exact else 1) + bd - 1) // bd)
    k = floor_exact(x.a) + fb
    while x >= k + 1:
        k += 1
    while x < k:
        k -= 1
    return k


def exact_log(x: ExactNumber) -> float:
    """Natural log of a positive exact number, accurate even when ``x`` is
    far below the double range or carries huge cancelling components."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log of a non-positive number")
        return math.log(x.numerator) - math.log(x.denominator)
    if x.sign() <= 0:
        raise ValueError("log of a non-positive number")
    a, b, s = x.a, x.b, x.s
    if a >= 0 and b >= 0:
        return _log_sum(a, b, s)
    # x = norm / (a - b*sqrt s); the denominator's terms share a sign
    n = x.norm()
    return exact_log(abs(n)) - _log_sum(abs(a), abs(b), s)


def _log_sum(a: Fraction, b: Fraction, s: int) -> float:
    """log(a + b*sqrt(s)) for a, b >= 0, not both zero."""
    terms = []
    if a:
        terms.append(exact_log(a))
    if b:
        terms.append(exact_log(b) + 0.5 * math.log(s))
    if len(terms) == 1:
        return terms[0]
    hi, lo = max(terms), min(terms)
    return hi + math.log1p(math.exp(lo - hi))


def to_float(x: ExactNumber) -> float:
    return float(x)


@dataclass(frozen=True)
class MobiusMap:
    """``x -> (a*x + b) / (c*x + d)`` with exact coefficients."""

    a: ExactNumber
    b: ExactNumber
    c: ExactNumber
    d: ExactNumber

    def __post_init__(self):
        if self.det == 0:
            raise ValueError("degenerate Mobius map (zero determinant)")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def increasing(self) -> bool:
        return sign(self.det) > 0

    def __call__(self, x: ExactNumber) -> ExactNumber:
        den = self.c * x + self.d
        if den == 0:
            raise PoleError(f"{self} evaluated at its pole {x}")
        num = self.a * x + self.b
        if not isinstance(num, QuadraticNumber):
            num = Fraction(num)
        return num / den

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """``self o other``, i.e. apply ``other`` first."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = compose

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "MobiusMap":
        """Divide out the common factor when all entries are integers."""
        ents = (self.a, self.b, self.c, self.d)
        if not all(isinstance(e, int) for e in ents):
            return self
        g = math.gcd(*ents)
        if self.c < 0 or (self.c == 0 and self.d < 0):
            g = -g
        if g in (1, 0):
            return self
        return MobiusMap(*(e // g for e in ents))

    def pole(self) -> ExactNumber | None:
        if self.c == 0:
            return None
        d = -self.d
        return (d if isinstance(d, QuadraticNumber) else Fraction(d)) / self.c

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mobius_compose(A: MobiusMap, B: MobiusMap) -> MobiusMap:
    return A.compose(B)


def mobius_apply(A: MobiusMap, x: ExactNumber) -> ExactNumber:
    return A(x)


@dataclass(frozen=True)
class ExactInterval:
    """Interval with exact endpoints and explicit open/closed ends."""

    lo: ExactNumber
    hi: ExactNumber
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    def __contains__(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def issubset(self, other: "ExactInterval") -> bool:
        if self.lo < other.lo or (self.lo == other.lo and self.lo_closed and not other.lo_closed):
            return False
        if self.hi > other.hi or (self.hi == other.hi and self.hi_closed and not other.hi_closed):
            return False
        return True

    def strict_subset(self, other: "ExactInterval") -> bool:
        return self.issubset(other) and self != other

    @property
    def width(self) -> ExactNumber:
        return self.hi - self.lo

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def interval_image(A: MobiusMap, I: ExactInterval) -> ExactInterval:
    """Image of ``I`` under ``A``; endpoint flags follow ``A``'s orientation."""
    d_lo = A.c * I.lo + A.d
    d_hi = A.c * I.hi + A.d
    s_lo, s_hi = sign(d_lo), sign(d_hi)
    if s_lo == 0 or s_hi == 0 or s_lo != s_hi:
        raise PoleError(f"pole of {A} lies in the closure of {I}")
    lo, hi = A(I.lo), A(I.hi)
    if A.increasing:
        return ExactInterval(lo, hi, I.lo_closed, I.hi_closed)
    return ExactInterval(hi, lo, I.hi_closed, I.lo_closed)
