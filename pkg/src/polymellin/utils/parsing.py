"""Flag values: comma vectors, semicolon-separated vector lists and angles with a "pi" factor."""

from __future__ import annotations

import math
import re
from fractions import Fraction

_PI_ANGLE = re.compile(r"^([+-]?)(\d+)?\*?pi(?:/(\d+))?$")


def parse_angle(text: str) -> float:
    """Radians, or an exact rational multiple of π such as "pi/3", "-2pi/3", "2*pi/3"."""

    cleaned = text.strip().lower().replace("π", "pi").replace(" ", "")
    match = _PI_ANGLE.match(cleaned)
    if match is not None:
        sign, numerator, denominator = match.groups()
        factor = Fraction(int(numerator) if numerator else 1, int(denominator) if denominator else 1)
        if sign == "-":
            factor = -factor
        return float(factor) * math.pi
    try:
        return float(cleaned)
    except ValueError as exc:
        raise ValueError(f"cannot parse angle {text!r}") from exc


def _split(text: str) -> list[str]:
    parts = [part.strip() for part in text.split(",")]
    if not text.strip() or any(not part for part in parts):
        raise ValueError(f"expected a comma-separated vector, got {text!r}")
    return parts


def parse_float_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in _split(text))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from exc


def parse_int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in _split(text))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from exc


def parse_angle_vector(text: str) -> tuple[float, ...]:
    return tuple(parse_angle(part) for part in _split(text))


def parse_complex_vector(text: str) -> tuple[complex, ...]:
    """"0.5,0.25" or "0.5+1j,0.25" (Python complex literals)."""

    try:
        return tuple(complex(part.replace(" ", "")) for part in _split(text))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated complex numbers, got {text!r}") from exc


def parse_vector_list(text: str) -> list[tuple[float, ...]]:
    """"1,2;3,4" -> [(1, 2), (3, 4)]."""

    return [parse_float_vector(chunk) for chunk in text.split(";") if chunk.strip()]


def parse_box(text: str) -> tuple[tuple[int, int], ...]:
    """"-2:2,0:3" -> ((-2, 2), (0, 3)); one inclusive integer range per axis."""

    ranges = []
    for part in _split(text):
        low, sep, high = part.partition(":")
        try:
            bounds = (int(low), int(high)) if sep else (int(low), int(low))
        except ValueError as exc:
            raise ValueError(f"expected lo:hi integer ranges, got {text!r}") from exc
        if bounds[0] > bounds[1]:
            raise ValueError(f"empty range {part!r}")
        ranges.append(bounds)
    return tuple(ranges)
