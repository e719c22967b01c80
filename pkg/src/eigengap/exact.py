"""Exact scalars of the form ``coef * pi**pi_exp`` and rational helpers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ParameterError


def to_rational(x) -> Fraction | None:
    """Return ``x`` as a Fraction when it is meant to be rational, else None.

    Integers and Fractions convert exactly.  Strings are parsed as decimals
    or ratios (``"1.1"`` -> 11/10, ``"2/3"``).  Floats count as rational only
    when integer-valued; pass a string or Fraction to get exact labels for
    non-integer lengths.
    """
    if isinstance(x, bool):
        raise ParameterError("boolean is not a numeric parameter")
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            return None
    if isinstance(x, float):
        if math.isfinite(x) and x.is_integer():
            return Fraction(int(x))
        return None
    return None


def as_positive(x, what: str) -> Fraction | float:
    """Validate a strictly positive geometric parameter.

    Rational inputs come back as Fraction, everything else as float.
    """
    q = to_rational(x)
    if q is not None:
        if q <= 0:
            raise ParameterError(f"{what} must be positive, got {x}")
        return q
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise ParameterError(f"{what} is not a number: {x!r}") from None
    if not math.isfinite(v) or v <= 0:
        raise ParameterError(f"{what} must be positive and finite, got {x}")
    return v


@dataclass(frozen=True)
class PiRational:
    """The exact real number ``coef * pi**pi_exp``."""

    coef: Fraction
    pi_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))

    def __float__(self) -> float:
        return float(self.coef) * math.pi**self.pi_exp

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coef * other.coef, self.pi_exp + other.pi_exp)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coef * other, self.pi_exp)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coef / other.coef, self.pi_exp - other.pi_exp)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coef / other, self.pi_exp)
        return NotImplemented

    def same_power(self, other: "PiRational") -> bool:
        return self.pi_exp == other.pi_exp

    def to_json(self) -> dict:
        return {"num": self.coef.numerator, "den": self.coef.denominator, "pi_exp": self.pi_exp}

    @classmethod
    def from_json(cls, d: dict) -> "PiRational":
        return cls(Fraction(int(d["num"]), int(d["den"])), int(d["pi_exp"]))

    def __str__(self) -> str:
        c = str(self.coef)
        if self.pi_exp == 0:
            return c
        p = "pi" if self.pi_exp == 1 else f"pi^{self.pi_exp}"
        return p if self.coef == 1 else f"{c}*{p}"


def le_sqrt_form(x: Fraction, a: Fraction, b: Fraction, r: Fraction) -> bool:
    """Exact test of ``x <= a + b*sqrt(r)`` for rationals with b >= 0, r >= 0."""
    if b < 0 or r < 0:
        raise ValueError("need b >= 0 and r >= 0")
    d = x - a
    if d <= 0:
        return True
    return d * d <= b * b * r


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
