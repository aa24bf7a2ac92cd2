"""Exact rational scalar used throughout the package.

gmpy2's mpq is used when available (an order of magnitude faster on the
comparison-heavy canonicalization kernel); the stdlib Fraction is a drop-in
fallback with identical semantics.  Both keep values in lowest terms, hash
identically, and compare exactly against the float infinities used as
sentinel bound values.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction


def rat(value) -> "Q":
    """Coerce an int, Fraction, mpq, or "p/q" string to the rational type."""
    if isinstance(value, float):
        raise TypeError(f"floats are not exact; got {value!r}")
    return Q(value)


def rat_str(value) -> str:
    """Render a rational as "p/q", or just "p" when the denominator is 1."""
    return str(value)
