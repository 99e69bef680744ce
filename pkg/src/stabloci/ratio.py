"""Canonical "p/q" text form for exact rationals.

Every rational that crosses a file or JSON boundary is written as a
string: "3", "-2/7".  The denominator is omitted when it is 1, so
formatting then parsing is the identity on reduced fractions, and two
equal fractions always serialise to the same bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedDocument


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str):
        raise MalformedDocument(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedDocument(f"bad rational literal {text!r}") from exc
