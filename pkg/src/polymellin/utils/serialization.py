from __future__ import annotations

import math
from dataclasses import fields, is_dataclass
from datetime import date, datetime
from enum import Enum
from fractions import Fraction
from typing import Any, cast

import numpy as np
from pydantic import BaseModel

from polymellin.algebra.coefficients import exact_parts, format_rational, is_exact
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.models.polynomial import PolynomialFile

JsonLike = dict[str, Any] | list[Any] | str | int | float | bool | None


def _float(value: float) -> float | str:
    if math.isfinite(value):
        return value
    return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")


def to_plain_data(value: Any) -> JsonLike:
    """Convert pydantic/dataclass/numeric objects into plain JSON-serializable structures.

    Complex numbers become {"re", "im"}; exact rationals become "p/q" strings.
    """

    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True, exclude_none=True)
    if isinstance(value, LaurentPolynomial):
        return PolynomialFile.from_polynomial(value).model_dump(mode="json")
    if is_dataclass(value) and not isinstance(value, type):
        return {item.name: to_plain_data(getattr(value, item.name)) for item in fields(value)}
    if isinstance(value, Enum):
        return to_plain_data(value.value)
    if isinstance(value, dict):
        return {str(key): to_plain_data(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain_data(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_plain_data(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        number = complex(value)
        return {"re": _float(number.real), "im": _float(number.imag)}
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else format_rational(value)
    if is_exact(value):
        real, imag = exact_parts(value)
        return {"re": to_plain_data(real), "im": to_plain_data(imag)}
    if isinstance(value, (datetime, date)):
        return value.isoformat()
    return cast(JsonLike, value)
