"""Exact rational values and finite domains.

Every value in a model is a :class:`fractions.Fraction`; booleans are 0 and 1.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from typing import Iterable

Value = Fraction
Domain = tuple  # tuple[Fraction, ...], order is enumeration order

ZERO = Fraction(0)
ONE = Fraction(1)

_VALUE_RE = re.compile(r"^\s*-?\s*(\d+(/\d+|\.\d*)?|\.\d+)\s*$")


def to_value(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions, Decimals and strings such as ``"3"``, ``"-1/3"``
    or ``"2.5"``. Floats are rejected: they are not exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return ONE if x else ZERO
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        if not _VALUE_RE.match(x):
            raise ValueError(f"not a rational literal: {x!r}")
        s = x.replace(" ", "")
        if "/" in s and int(s.split("/")[1]) == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return Fraction(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, Fraction or a string")
    raise TypeError(f"cannot convert {type(x).__name__} to a rational value")


def format_value(v: Fraction) -> str:
    """Canonical text form: ``"5"``, ``"-3"`` or ``"1/3"``."""
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def json_value(v: Fraction):
    """Integers become JSON numbers, other rationals ``"p/q"`` strings."""
    if v.denominator == 1:
        return v.numerator
    return format_value(v)


def make_domain(values: Iterable) -> tuple:
    dom = tuple(to_value(v) for v in values)
    if not dom:
        raise ValueError("domain must be nonempty")
    if len(set(dom)) != len(dom):
        raise ValueError("domain values must be distinct")
    return dom


def truth(v: Fraction) -> bool:
    return v != 0
