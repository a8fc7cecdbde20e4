"""Exact rationals.

``fractions.Fraction`` already keeps values in lowest terms with a positive
denominator, so it serves as the numeric type throughout. This module adds
construction helpers and the JSON/display conventions.
"""

from __future__ import annotations

import re
from decimal import Context, Decimal
from fractions import Fraction

from urntubes.errors import DomainError

Rational = Fraction

_APPROX_CONTEXT = Context(prec=12)
_RAT_RE = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"not an exact number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"not an exact number: {value!r}")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise DomainError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rational(num, den)


def approx(x: Fraction) -> float:
    """Display-only approximation, rounded to 12 significant digits."""
    d = _APPROX_CONTEXT.divide(Decimal(x.numerator), Decimal(x.denominator))
    return float(d)


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "approx": approx(x)}


def from_json(obj: dict) -> Fraction:
    return rational(int(obj["num"]), int(obj["den"]))
