"""Exact rational arithmetic and small integer-lattice helpers.

All solver-path arithmetic in this package is exact: rationals are
``fractions.Fraction`` (always stored reduced, denominator positive) and
integers are Python's arbitrary-precision ints.  No floating point ever
enters a solve.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

#: Exact rational scalar used throughout the solver path.
Rational = Fraction

#: Dense exact vectors/matrices are plain tuples; dimensions are fixed by
#: construction and the helpers below enforce rectangularity.
IntVector = tuple
RatVector = tuple
IntMatrix = tuple

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def as_rational(value) -> Fraction:
    """Coerce an int or Fraction to Fraction, rejecting inexact types."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected exact rational, got {type(value).__name__}")


def parse_rational(text) -> Fraction:
    """Parse an integer or a 'p/q' string into an exact Fraction.

    Decimal literals are rejected on purpose: files and flags must carry
    exact values.
    """
    if isinstance(value := text, bool):
        raise ValueError("booleans are not rational literals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value.strip()):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(value.strip())
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as 'p' or 'p/q'."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_int_vector(values: Iterable) -> tuple:
    """Validate and freeze an integer vector."""
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"integer vector entry must be int, got {v!r}")
        out.append(v)
    return tuple(out)


def as_rat_vector(values: Iterable) -> tuple:
    """Validate and freeze a rational vector."""
    return tuple(as_rational(v) for v in values)


def as_int_matrix(rows: Iterable[Iterable]) -> tuple:
    """Validate and freeze a rectangular integer matrix (tuple of rows)."""
    frozen = tuple(as_int_vector(r) for r in rows)
    if frozen and any(len(r) != len(frozen[0]) for r in frozen):
        raise ValueError("matrix rows must share one column count")
    return frozen


def lcm_denominators(values: Iterable[Fraction]) -> int:
    """Smallest positive integer M with M*v integral for every v.

    The empty collection yields 1.
    """
    m = 1
    for v in values:
        m = math.lcm(m, as_rational(v).denominator)
    return m


def rat_dot(coeffs: Sequence, x: Sequence):
    """Exact inner product of two equal-length vectors."""
    if len(coeffs) != len(x):
        raise ValueError(f"length mismatch: {len(coeffs)} vs {len(x)}")
    return sum(c * xi for c, xi in zip(coeffs, x))


def int_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer, exactly."""
    if n < 0 or k < 1:
        raise ValueError("int_nth_root needs n >= 0 and k >= 1")
    if n in (0, 1) or k == 1:
        return n
    # Newton iteration on integers converges from above to floor(n^(1/k)).
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r


def exact_nth_root(value: Fraction, k: int):
    """The exact rational k-th root of value, or None if it is irrational."""
    value = as_rational(value)
    if value < 0:
        raise ValueError("negative radicand")
    p = int_nth_root(value.numerator, k)
    q = int_nth_root(value.denominator, k)
    if p ** k == value.numerator and q ** k == value.denominator:
        return Fraction(p, q)
    return None
