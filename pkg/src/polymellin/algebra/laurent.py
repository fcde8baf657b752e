from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from polymellin.algebra.coefficients import (
    EXACT_ZERO,
    Coefficient,
    exact_int,
    is_exact,
    is_zero,
    to_complex,
    to_exact,
)
from polymellin.constants import SAFE_LOG_MODULUS
from polymellin.errors import EvaluationOverflow, InputFormatError
from polymellin.geometry.polytope import ExponentVector, Face

logger = logging.getLogger(__name__)

Term: TypeAlias = tuple[ExponentVector, Coefficient]


@dataclass(frozen=True, slots=True)
class LogPoint:
    """w = x + iθ in log coordinates."""

    x: tuple[float, ...]
    theta: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.x) != len(self.theta):
            raise ValueError(f"x has {len(self.x)} entries but theta has {len(self.theta)}")

    @classmethod
    def at(cls, x: Sequence[float], theta: Sequence[float] | None = None) -> LogPoint:
        coords = tuple(float(value) for value in x)
        angles = tuple(float(value) for value in theta) if theta is not None else (0.0,) * len(coords)
        return cls(x=coords, theta=angles)


def _combine(nvars: int, terms: Iterable[Term]) -> tuple[Term, ...]:
    items = list(terms)
    if not all(is_exact(coefficient) for _, coefficient in items):
        items = [(exponent, to_complex(coefficient)) for exponent, coefficient in items]
    pending: dict[ExponentVector, Coefficient] = {}
    for exponent, coefficient in items:
        key = tuple(int(value) for value in exponent)
        if len(key) != nvars:
            raise InputFormatError(f"exponent {key} does not have {nvars} entries")
        pending[key] = pending[key] + coefficient if key in pending else coefficient
    kept = [(key, value) for key, value in pending.items() if not is_zero(value)]
    return tuple(sorted(kept, key=lambda term: term[0]))


@dataclass(frozen=True, slots=True)
class LaurentPolynomial:
    """Finite sum Σ a_α z^α with integer exponent vectors, kept in lexicographic term order.

    Coefficients are all exact Gaussian rationals or all complex doubles; mixing
    the two converts everything to complex.
    """

    nvars: int
    terms: tuple[Term, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise InputFormatError("a Laurent polynomial needs at least one variable")
        object.__setattr__(self, "terms", _combine(self.nvars, self.terms))

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Sequence[int], Coefficient] | Iterable[Term]) -> LaurentPolynomial:
        items = terms.items() if isinstance(terms, Mapping) else terms
        return cls(nvars=nvars, terms=tuple((tuple(exp), coeff) for exp, coeff in items))

    @classmethod
    def zero(cls, nvars: int) -> LaurentPolynomial:
        return cls(nvars=nvars)

    @classmethod
    def constant(cls, value: Coefficient, nvars: int) -> LaurentPolynomial:
        coefficient = exact_int(value) if isinstance(value, int) else value
        return cls(nvars=nvars, terms=(((0,) * nvars, coefficient),))

    @classmethod
    def monomial(cls, exponent: Sequence[int], value: Coefficient = 1) -> LaurentPolynomial:
        key = tuple(int(entry) for entry in exponent)
        coefficient = exact_int(value) if isinstance(value, int) else value
        return cls(nvars=len(key), terms=((key, coefficient),))

    @property
    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(exponent for exponent, _ in self.terms)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(coefficient) for _, coefficient in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        key = tuple(exponent)
        for candidate, value in self.terms:
            if candidate == key:
                return value
        return EXACT_ZERO if self.is_exact else 0j

    def as_dict(self) -> dict[ExponentVector, Coefficient]:
        return dict(self.terms)

    def to_complex(self) -> LaurentPolynomial:
        return LaurentPolynomial(self.nvars, tuple((exp, to_complex(value)) for exp, value in self.terms))

    def to_exact(self) -> LaurentPolynomial | None:
        """Exact copy, or None when some coefficient has no short rational form."""

        converted = []
        for exponent, value in self.terms:
            exact = to_exact(value)
            if exact is None:
                return None
            converted.append((exponent, exact))
        return LaurentPolynomial(self.nvars, tuple(converted))

    def exponent_matrix(self) -> NDArray[np.int64]:
        if not self.terms:
            return np.zeros((0, self.nvars), dtype=np.int64)
        return np.array(self.support, dtype=np.int64)

    def coefficient_array(self) -> NDArray[np.complex128]:
        return np.array([to_complex(value) for _, value in self.terms], dtype=np.complex128)

    def scale(self, factor: Coefficient) -> LaurentPolynomial:
        if self.is_exact:
            if isinstance(factor, int):
                factor = exact_int(factor)
            elif not is_exact(factor):
                return self.to_complex().scale(factor)
        elif is_exact(factor):
            factor = to_complex(factor)
        return LaurentPolynomial(self.nvars, tuple((exp, value * factor) for exp, value in self.terms))

    def _check_partner(self, other: LaurentPolynomial) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check_partner(other)
        return LaurentPolynomial(self.nvars, self.terms + other.terms)

    def __neg__(self) -> LaurentPolynomial:
        return self.scale(-1)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return multiply(self, other)


def evaluate_log(p: LaurentPolynomial, at: LogPoint) -> complex:
    """Σ a_α e^{⟨α, x+iθ⟩}; raises EvaluationOverflow beyond the safe log-modulus range."""

    if len(at.x) != p.nvars:
        raise ValueError(f"point has {len(at.x)} coordinates, polynomial has {p.nvars} variables")
    total = 0j
    for exponent, value in p.terms:
        coefficient = to_complex(value)
        real_part = math.fsum(a * x for a, x in zip(exponent, at.x, strict=True))
        if real_part + math.log(abs(coefficient)) > SAFE_LOG_MODULUS:
            raise EvaluationOverflow(f"term {exponent} has log-modulus above {SAFE_LOG_MODULUS} at x={at.x}")
        phase = math.fsum(a * t for a, t in zip(exponent, at.theta, strict=True))
        total += coefficient * cmath.exp(complex(real_part, phase))
    return total


def evaluate_log_grid(
    p: LaurentPolynomial,
    x: ArrayLike,
    theta: ArrayLike,
) -> tuple[NDArray[np.complex128], NDArray[np.float64]]:
    """Vectorized evaluation returning (mantissa, shift) with p(e^{x+iθ}) = mantissa · e^{shift}.

    ``shift`` is the largest term log-modulus at each point, so the mantissa
    stays O(1) no matter how large |x| gets.
    """

    xs = np.asarray(x, dtype=np.float64)
    thetas = np.asarray(theta, dtype=np.float64)
    shape = np.broadcast_shapes(xs.shape, thetas.shape)[:-1]
    if not p.terms:
        return np.zeros(shape, dtype=np.complex128), np.zeros(shape, dtype=np.float64)

    exponents = p.exponent_matrix().astype(np.float64)
    coefficients = p.coefficient_array()
    log_modulus = xs @ exponents.T + np.log(np.abs(coefficients))
    phase = thetas @ exponents.T + np.angle(coefficients)
    shift = np.max(log_modulus, axis=-1, keepdims=True)
    terms = np.exp((log_modulus - shift) + 1j * phase)
    mantissa = np.sum(terms, axis=-1)
    return (
        np.broadcast_to(mantissa, shape).astype(np.complex128),
        np.broadcast_to(shift[..., 0], shape).astype(np.float64),
    )


def term_modulus_log(p: LaurentPolynomial, x: ArrayLike) -> NDArray[np.float64]:
    """log Σ |a_α| e^{⟨α,x⟩}, the scale used by the non-vanishing and witness checks."""

    xs = np.asarray(x, dtype=np.float64)
    exponents = p.exponent_matrix().astype(np.float64)
    log_modulus = xs @ exponents.T + np.log(np.abs(p.coefficient_array()))
    shift = np.max(log_modulus, axis=-1, keepdims=True)
    total = shift[..., 0] + np.log(np.sum(np.exp(log_modulus - shift), axis=-1))
    return np.asarray(total, dtype=np.float64)


def truncate_to_face(p: LaurentPolynomial, face: Face) -> LaurentPolynomial:
    keep = set(face.support)
    return LaurentPolynomial(p.nvars, tuple(term for term in p.terms if term[0] in keep))


def weighted_euler_derivative(p: LaurentPolynomial, mu: Sequence[int], c: int) -> LaurentPolynomial:
    """Σ (⟨mu,α⟩ − c) a_α z^α, i.e. d/dλ [λ^{−c} p(λ^{mu} z)] at λ = 1."""

    if len(mu) != p.nvars:
        raise ValueError(f"mu has {len(mu)} entries, polynomial has {p.nvars} variables")
    exact = p.is_exact
    terms = []
    for exponent, value in p.terms:
        weight = sum(m * a for m, a in zip(mu, exponent, strict=True)) - int(c)
        factor = exact_int(weight) if exact else complex(weight)
        terms.append((exponent, value * factor))
    return LaurentPolynomial(p.nvars, tuple(terms))


def multiply(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    if p.nvars != q.nvars:
        raise ValueError(f"cannot multiply polynomials in {p.nvars} and {q.nvars} variables")
    if not (p.is_exact and q.is_exact):
        p, q = p.to_complex(), q.to_complex()
    products = (
        (tuple(a + b for a, b in zip(left, right, strict=True)), lhs * rhs)
        for left, lhs in p.terms
        for right, rhs in q.terms
    )
    return LaurentPolynomial(p.nvars, tuple(products))


def exact_or_complex(p: LaurentPolynomial, *, purpose: str) -> LaurentPolynomial:
    """Exact copy of p when possible, otherwise a complex copy and a logged warning."""

    exact = p.to_exact()
    if exact is not None:
        return exact
    logger.warning("coefficients of %s are not short rationals; %s falls back to complex doubles", p, purpose)
    return p.to_complex()
