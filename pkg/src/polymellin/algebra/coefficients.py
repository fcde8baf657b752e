"""Coefficient domains for Laurent polynomials.

Coefficients are either complex doubles or exact Gaussian rationals taken from
sympy's ``QQ_I`` domain. The exact domain backs the integration-by-parts
recursion; evaluation always happens in complex doubles.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, TypeAlias

from sympy.polys.domains import QQ, QQ_I

from polymellin.constants import EXACT_DENOMINATOR_LIMIT

ExactCoefficient: TypeAlias = Any  # sympy GaussianRational (QQ_I.dtype)
Coefficient: TypeAlias = "complex | ExactCoefficient"

EXACT_ZERO = QQ_I(0, 0)
EXACT_ONE = QQ_I(1, 0)


def is_exact(value: object) -> bool:
    return isinstance(value, QQ_I.dtype)


def exact_int(value: int) -> ExactCoefficient:
    return QQ_I(int(value), 0)


def exact_from_fractions(real: Fraction, imag: Fraction = Fraction(0)) -> ExactCoefficient:
    return QQ_I(QQ(real.numerator, real.denominator), QQ(imag.numerator, imag.denominator))


def _rational_to_float(value: Any) -> float:
    return int(value.numerator) / int(value.denominator)


def _rational_to_fraction(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def exact_parts(value: ExactCoefficient) -> tuple[Fraction, Fraction]:
    return _rational_to_fraction(value.x), _rational_to_fraction(value.y)


def to_complex(value: Coefficient) -> complex:
    if is_exact(value):
        return complex(_rational_to_float(value.x), _rational_to_float(value.y))
    return complex(value)


def float_to_fraction(value: float) -> Fraction | None:
    """Return the short rational a double stands for, or None when there is none."""

    if value != value or value in (float("inf"), float("-inf")):
        return None
    candidate = Fraction(value).limit_denominator(EXACT_DENOMINATOR_LIMIT)
    if float(candidate) != value:
        return None
    return candidate


def parse_rational(value: str | int | float) -> Fraction | None:
    """Parse a JSON coefficient part: an int, a float, or a string such as "1/3" or "0.25"."""

    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Decimal literals like 0.1 mean 1/10, not the nearest binary fraction.
        try:
            return Fraction(repr(value))
        except ValueError:
            return None
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        return None


def to_exact(value: Coefficient) -> ExactCoefficient | None:
    """Convert to the exact domain; None if the value has no short rational form."""

    if is_exact(value):
        return value
    number = complex(value)
    real = float_to_fraction(number.real)
    imag = float_to_fraction(number.imag)
    if real is None or imag is None:
        return None
    return exact_from_fractions(real, imag)


def is_zero(value: Coefficient) -> bool:
    if is_exact(value):
        return bool(value == EXACT_ZERO)
    return complex(value) == 0


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
