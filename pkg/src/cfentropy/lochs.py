"""Digit transfer between two expansions: m(n, x) and its Monte Carlo mean."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .cylinders import common_prefix_depth, cylinder_of_point
from .entropy import entropy_value
from .exact import ExactNumber
from .expansions import DomainError, ExpansionFamily
from .sampling import bits_for, draw_point, parallel_map, sample_point  # noqa: F401


@dataclass(frozen=True)
class LochsEstimate:
    source: ExpansionFamily
    target: ExpansionFamily
    n: int
    samples: int
    mean_ratio: float
    median_ratio: float
    std_error: float
    predicted: float
    seed: int
    rejected: int = 0

    @property
    def relative_gap(self) -> float:
        return (self.mean_ratio - self.predicted) / self.predicted


def common_upper(source: ExpansionFamily, target: ExpansionFamily):
    return min(source.upper, target.upper)


def m_of_n(source: ExpansionFamily, target: ExpansionFamily, x: ExactNumber, n: int) -> int:
    """Number of target digits of ``x`` fixed by its first ``n`` source digits."""
    if not 0 < x < common_upper(source, target):
        raise DomainError(f"{x} is not in the common domain of {source} and {target}")
    I = cylinder_of_point(source, x, n).interval
    if I.hi > target.upper:
        # the source cylinder pokes out of the target domain
        return 0
    return common_prefix_depth(target, I)


def predicted_ratio(source: ExpansionFamily, target: ExpansionFamily) -> float:
    return entropy_value(source) / entropy_value(target)


def default_bits(source: ExpansionFamily, target: ExpansionFamily, n: int) -> int:
    return bits_for(n, max(entropy_value(source), entropy_value(target)))


def _one(source, target, n, seed, bits, index):
    x, rejected = draw_point(seed, index, bits, (source, target), n, common_upper(source, target))
    return m_of_n(source, target, x, n) / n, rejected


def lochs_estimate(source: ExpansionFamily, target: ExpansionFamily, n: int, samples: int,
                   seed: int, workers: int = 1, bits: int | None = None) -> LochsEstimate:
    if n < 1 or samples < 1:
        raise ValueError("n and samples must be positive")
    bits = default_bits(source, target, n) if bits is None else bits
    out = parallel_map(partial(_one, source, target, n, seed, bits), range(samples), workers)
    ratios = [r for r, _ in out]
    mean = math.fsum(ratios) / samples
    se = statistics.stdev(ratios) / math.sqrt(samples) if samples > 1 else 0.0
    return LochsEstimate(
        source, target, n, samples, mean, statistics.median(ratios), se,
        predicted_ratio(source, target), seed, sum(r for _, r in out),
    )
