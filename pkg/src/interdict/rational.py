"""Exact rational arithmetic shared by every solver component.

All quantities in this package (profits, costs, weights, budgets, LP
coefficients) are rationals and every computation is exact; there is no
floating-point path anywhere.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def rat(value, den=None) -> Rational:
    """Build a Rational from ints, strings, Fractions or another Rational."""
    if den is not None:
        return mpq(value, den)
    return mpq(value)


def rat_from_str(text: str) -> Rational:
    """Parse 'num/den' or an integer string; reject anything else."""
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return mpq(text)


def rat_to_str(q) -> str:
    return str(mpq(q))


def is_integral(q) -> bool:
    return mpq(q).denominator == 1


def floor_to_geometric(value, base, ratio):
    """Largest base*ratio**h <= value with h >= 0; returns (h, grid value).

    Requires 0 < base <= value and ratio > 1.
    """
    value, base, ratio = mpq(value), mpq(base), mpq(ratio)
    if not (0 < base <= value):
        raise ValueError("need 0 < base <= value")
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    h, grid = 0, base
    nxt = grid * ratio
    while nxt <= value:
        grid = nxt
        nxt = grid * ratio
        h += 1
    return h, grid


def ceil_to_geometric(value, base, ratio):
    """Smallest base*ratio**h >= value with h >= 0; returns (h, grid value).

    Requires 0 < value and ratio > 1; values below base land on base.
    """
    value, base, ratio = mpq(value), mpq(base), mpq(ratio)
    if base <= 0 or value <= 0:
        raise ValueError("base and value must be positive")
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    h, grid = 0, base
    while grid < value:
        grid = grid * ratio
        h += 1
    return h, grid
