"""Time the pure-Python and compiled integer kernels on the same workloads.

    python3 benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import random
import sys
import timeit
from fractions import Fraction

from cfentropy.kernels import CHAN, DECIMAL, GAUSS, NCF, RENYI, backends

CASES = [("decimal", DECIMAL, 0), ("gauss", GAUSS, 0), ("chan2", CHAN, 2),
         ("ncf3", NCF, 3), ("renyi2", RENYI, 2)]


def workloads(kind, param, bits, n, rng):
    p, q = rng.getrandbits(bits) | 1, 1 << bits
    ds = backends()["python"].orbit_digits(kind, param, p, q, n)[0]
    a, b, c, d = backends()["python"].compose(kind, param, ds)
    lo, hi = sorted([Fraction(b, d), Fraction(a + b, c + d)])
    return {
        "orbit": lambda m: m.orbit_digits(kind, param, p, q, n),
        "compose": lambda m: m.compose(kind, param, ds),
        "refine": lambda m: m.refine_depth(kind, param, lo.numerator, lo.denominator, True,
                                           hi.numerator, hi.denominator, False, 10**6),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--bits", type=int, default=4000)
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    mods = backends()
    if "cython" not in mods:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
    rng = random.Random(0)
    print(f"{'case':8} {'task':8} " + " ".join(f"{name:>12}" for name in mods) + "   speedup")
    for label, kind, param in CASES:
        for task, fn in workloads(kind, param, args.bits, args.n, rng).items():
            times = {name: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat))
                     for name, m in mods.items()}
            cols = " ".join(f"{t * 1e3:10.3f}ms" for t in times.values())
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{label:8} {task:8} {cols}   {speed:6.2f}x")


if __name__ == "__main__":
    main()
