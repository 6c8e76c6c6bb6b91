"""Exact digit dynamics, entropies and Lochs-type digit transfer for
continued-fraction-like expansions."""
from .exact import ExactInterval, MobiusMap, QuadraticNumber, Rational, floor_exact
from .expansions import (
    DigitBlock,
    ExpansionFamily,
    chan,
    decimal,
    gauss,
    ncf,
    parse_family,
    renyi,
    theta,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DigitBlock",
    "ExactInterval",
    "ExpansionFamily",
    "MobiusMap",
    "QuadraticNumber",
    "Rational",
    "chan",
    "decimal",
    "floor_exact",
    "gauss",
    "ncf",
    "parse_family",
    "renyi",
    "theta",
]
