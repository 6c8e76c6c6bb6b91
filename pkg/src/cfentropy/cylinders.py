"""Cylinder sets, convergents and the common-digit depth of an interval."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .exact import ExactInterval, ExactNumber, MobiusMap, interval_image
from .expansions import (
    DigitBlock,
    DomainError,
    ExpansionFamily,
    InadmissibleDigitError,
    branch_cell,
    branch_index,
    digits,
    inverse_branch,
    is_undefined,
)


class OrbitTerminatedError(ValueError):
    """The orbit reached a point with no digit before producing enough digits."""


@dataclass(frozen=True)
class Cylinder:
    block: DigitBlock
    interval: ExactInterval
    convergent: ExactNumber
    composed: MobiusMap

    @property
    def family(self) -> ExpansionFamily:
        return self.block.family

    def __len__(self):
        return len(self.block)


def base_interval(F: ExpansionFamily) -> ExactInterval:
    """Half-open fundamental domain whose images are the cylinders."""
    return ExactInterval(Fraction(0), F.upper, True, False)


def compose_block(F: ExpansionFamily, ds) -> MobiusMap:
    """``u_{d1} o ... o u_{dn}`` as a matrix with common content removed."""
    code = F.kernel_code
    if code is not None:
        return MobiusMap(*kernels.compose(code, F.param, list(ds)))
    A = MobiusMap.identity()
    for d in ds:
        A = A @ inverse_branch(F, d)
    return A


def build_cylinder(block: DigitBlock) -> Cylinder:
    F = block.family
    if len(block) == 0:
        raise InadmissibleDigitError("a cylinder needs at least one digit")
    A = compose_block(F, block.digits)
    interval = interval_image(A, base_interval(F))
    if inverse_branch(F, block.digits[-1])(Fraction(0)) == F.upper:
        # the innermost cell ends at the excluded right end of the domain,
        # so its closed end (the image of 0) is not attained
        interval = ExactInterval(interval.lo, interval.hi, False, False)
    # for the increasing Renyi branches the truncated expansion is the
    # right-hand (open) endpoint, u(1); everywhere else it is u(0)
    convergent = A(Fraction(1)) if F.kind == "renyi" else A(Fraction(0))
    return Cylinder(block, interval, convergent, A)


def cylinder_of_point(F: ExpansionFamily, x: ExactNumber, n: int) -> Cylinder:
    block = digits(F, x, n)
    if block.truncated:
        raise OrbitTerminatedError(f"orbit of {x} under {F} ends after {len(block)} digits")
    return build_cylinder(block)


def _check_inside(F: ExpansionFamily, I: ExactInterval) -> None:
    if not I.lo < I.hi:
        raise DomainError("interval must be nondegenerate")
    if I.lo < 0 or I.hi > F.upper:
        raise DomainError(f"{I} is not inside the domain of {F}")


def right_digit(F: ExpansionFamily, x: ExactNumber) -> int:
    """Digit shared by all points just to the right of ``x``."""
    d = branch_index(F, x)
    if F.kind not in ("decimal", "renyi") and branch_cell(F, d).hi == x:
        return d - 1
    return d


def common_prefix_depth(F: ExpansionFamily, I: ExactInterval, limit: int | None = None) -> int:
    """Largest ``m`` with ``I`` inside a single ``m``-th order cylinder of ``F``.

    Containment respects the half-open cell conventions of the floor digit
    rule, so an ``n``-cylinder of ``F`` itself has depth exactly ``n``.
    """
    _check_inside(F, I)
    limit = sys.maxsize if limit is None else limit
    code = F.kernel_code
    lo, hi = I.lo, I.hi
    if code is not None and isinstance(lo, Fraction) and isinstance(hi, Fraction):
        return kernels.refine_depth(
            code, F.param,
            lo.numerator, lo.denominator, I.lo_closed,
            hi.numerator, hi.denominator, I.hi_closed,
            limit,
        )
    return refine_depth_generic(F, I, limit)


def refine_depth_generic(F: ExpansionFamily, I: ExactInterval, limit: int) -> int:
    """Interval refinement on exact numbers; reference for the integer kernel."""
    m = 0
    while m < limit:
        if is_undefined(F, I.lo):
            break
        d = right_digit(F, I.lo)
        if not I.issubset(branch_cell(F, d)):
            break
        I = interval_image(inverse_branch(F, d).inverse(), I)
        m += 1
    return m


def left_digit(F: ExpansionFamily, x: ExactNumber) -> int:
    """Digit shared by all points just to the left of ``x``."""
    if x == F.upper:
        # only decimal (9) and Gauss-like families with a closed top cell get here
        return branch_index(F, x) if F.kind != "decimal" else 9
    d = branch_index(F, x)
    if F.kind in ("decimal", "renyi") and branch_cell(F, d).lo == x:
        return d - 1
    return d


def one_sided_digits(F: ExpansionFamily, x: ExactNumber, side: int):
    """Digits of the points just right (``side=+1``) or left (``-1``) of ``x``.

    Generator; stops where the one-sided digits become unbounded.
    """
    while True:
        if side > 0:
            if is_undefined(F, x) and F.kind != "renyi" or x == F.upper:
                return
            d = right_digit(F, x)
        else:
            if x == 0 or (F.kind == "renyi" and x == 1):
                return
            d = left_digit(F, x)
        yield d
        u = inverse_branch(F, d)
        x = u.inverse()(x)
        if not u.increasing:
            side = -side


def common_prefix_depth_endpoints(F: ExpansionFamily, I: ExactInterval) -> int:
    """Longest common prefix of the expansions of the two endpoints, each
    read from inside the interval.

    An independent route to ``common_prefix_depth``; it ignores the
    open/closed flags, so the two may differ by one.
    """
    _check_inside(F, I)
    m = 0
    for a, b in zip(one_sided_digits(F, I.lo, +1), one_sided_digits(F, I.hi, -1)):
        if a != b:
            break
        m += 1
    return m
