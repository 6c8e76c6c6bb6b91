"""Backend selection for the integer kernels.

The compiled module is used when it imports; ``CFENTROPY_BACKEND=python``
forces the pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("CFENTROPY_BACKEND", "").lower() == "python":
    impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as impl
        BACKEND = "cython"
    except ImportError:
        impl = _kernels_py
        BACKEND = "python"

DECIMAL, GAUSS, CHAN, NCF, RENYI = range(5)

orbit_digits = impl.orbit_digits
compose = impl.compose
refine_depth = impl.refine_depth
step = impl.step
digit = impl.digit
branch = impl.branch
chan_digit = impl.chan_digit
right_digit = impl.right_digit


def backends():
    """All importable kernel modules, keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
