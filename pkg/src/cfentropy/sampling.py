"""Deterministic per-index random points and an order-preserving parallel map."""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .expansions import ExpansionFamily, orbit_is_clean


class RejectionBudgetExceeded(RuntimeError):
    pass


def stream(seed: int, index: int, tag: str = "") -> random.Random:
    """Independent generator for sample ``index``; string seeding is stable across runs."""
    return random.Random(f"{seed}:{tag}:{index}")


def bits_for(n: int, entropy: float) -> int:
    """Bit length giving an orbit that survives about ``1.25 n`` digits at this entropy."""
    return math.ceil(1.25 * n * entropy / math.log(2)) + 128


def draw_point(seed: int, index: int, bits: int, families=(), n: int = 0,
               upper=Fraction(1), max_tries: int = 1000):
    """Uniform dyadic ``k / 2**bits`` in ``(0, upper)`` whose first ``n`` orbit
    points avoid cell boundaries under every family.

    Returns ``(x, rejected)``.
    """
    rng = stream(seed, index)
    scale = 1 << bits
    for tries in range(max_tries):
        k = rng.getrandbits(bits)
        if k == 0:
            continue
        x = Fraction(k, scale)
        if not x < upper:
            continue
        if all(orbit_is_clean(F, x, n) for F in families):
            return x, tries
    raise RejectionBudgetExceeded(f"no admissible point for index {index} after {max_tries} draws")


def sample_point(seed: int, index: int, bits: int, families: tuple[ExpansionFamily, ...] = (),
                 n: int = 0, upper=Fraction(1)) -> Fraction:
    return draw_point(seed, index, bits, families, n, upper)[0]


def parallel_map(fn, items, workers: int = 1):
    """``list(map(fn, items))``, optionally across processes; order is preserved."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
