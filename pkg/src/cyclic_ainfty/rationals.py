"""Canonical exact rational scalars.

Every scalar in this package is a :class:`fractions.Fraction`: arbitrary
precision, always in lowest terms, positive denominator.  No floating point
enters anywhere.  On the wire a scalar is the canonical string ``"p/q"``
(q > 1) or ``"p"`` (q == 1), e.g. ``"-3/7"``, ``"0"``, ``"5"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["Scalar", "ZERO", "ONE", "parse_scalar", "format_scalar", "ScalarFormatError"]

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_RE = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")


class ScalarFormatError(ValueError):
    """A string is not a canonical rational."""


def parse_scalar(text: str) -> Fraction:
    """Parse a canonical rational string.

    Accepts only the canonical forms: an optionally signed integer, or
    ``p/q`` with q a positive integer.  ``"1/0"`` and non-canonical spellings
    like ``"+1"``, ``"1.5"`` or ``" 1"`` are rejected.
    """
    if not isinstance(text, str):
        raise ScalarFormatError(f"scalar must be a string, got {type(text).__name__}")
    m = _SCALAR_RE.match(text)
    if m is None:
        if re.match(r"^-?\d+/0\d*$", text):
            raise ScalarFormatError(f"zero denominator in scalar {text!r}")
        raise ScalarFormatError(f"not a canonical rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return Fraction(num, den)


def format_scalar(value: Fraction) -> str:
    """Canonical string form, inverse to :func:`parse_scalar`."""
    return str(Fraction(value))
