"""The JSON polynomial format: {"nvars": n, "terms": [{"exp": [...], "re": ..., "im": ...}]}.

"re" and "im" take numbers or rational strings such as "1/3". A file whose
coefficients are all short rationals loads into the exact coefficient domain.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from pydantic import Field, ValidationError, field_validator

from polymellin.algebra.coefficients import (
    exact_from_fractions,
    exact_parts,
    format_rational,
    is_exact,
    parse_rational,
    to_complex,
)
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.errors import InputFormatError
from polymellin.models.common import FileModel

CoefficientPart = int | float | str


class TermEntry(FileModel):
    exp: list[int]
    re: CoefficientPart = 0
    im: CoefficientPart = 0

    @field_validator("re", "im")
    @classmethod
    def _parsable(cls, value: CoefficientPart) -> CoefficientPart:
        if isinstance(value, str) and parse_rational(value) is None:
            raise ValueError(f"{value!r} is neither a number nor a rational literal")
        return value


class PolynomialFile(FileModel):
    nvars: int = Field(ge=1)
    terms: list[TermEntry] = Field(default_factory=list)

    def to_polynomial(self) -> LaurentPolynomial:
        parsed = [(entry.exp, parse_rational(entry.re), parse_rational(entry.im)) for entry in self.terms]
        for exponent, _, _ in parsed:
            if len(exponent) != self.nvars:
                raise InputFormatError(f"exponent {exponent} does not have {self.nvars} entries")
        if all(re is not None and im is not None for _, re, im in parsed):
            return LaurentPolynomial(
                self.nvars,
                tuple((tuple(exp), exact_from_fractions(re, im)) for exp, re, im in parsed),  # type: ignore[arg-type]
            )
        return LaurentPolynomial(
            self.nvars,
            tuple((tuple(entry.exp), complex(_as_float(entry.re), _as_float(entry.im))) for entry in self.terms),
        )

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial) -> PolynomialFile:
        entries = []
        for exponent, value in p.terms:
            if is_exact(value):
                real, imag = exact_parts(value)
                entries.append(TermEntry(exp=list(exponent), re=_exact_part(real), im=_exact_part(imag)))
            else:
                number = to_complex(value)
                entries.append(TermEntry(exp=list(exponent), re=number.real, im=number.imag))
        return cls(nvars=p.nvars, terms=entries)


def _as_float(value: CoefficientPart) -> float:
    if isinstance(value, str):
        parsed = parse_rational(value)
        assert parsed is not None
        return float(parsed)
    return float(value)


def _exact_part(value: Fraction) -> int | str:
    return value.numerator if value.denominator == 1 else format_rational(value)


def parse_polynomial(data: object) -> LaurentPolynomial:
    try:
        document = PolynomialFile.model_validate(data)
    except ValidationError as exc:
        raise InputFormatError(f"invalid polynomial document: {exc}") from exc
    return document.to_polynomial()


def load_polynomial(path: Path) -> LaurentPolynomial:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputFormatError(f"polynomial file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    return parse_polynomial(raw)


def dump_polynomial(p: LaurentPolynomial, path: Path | None = None) -> str:
    text = PolynomialFile.from_polynomial(p).model_dump_json(indent=2)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
    return text
