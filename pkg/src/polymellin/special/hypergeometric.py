"""Gauss hypergeometric function ₂F₁(a, b; 1; z) with the lower parameter fixed at 1."""

from __future__ import annotations

import cmath
from collections.abc import Callable

from polymellin.constants import HYP2F1_DIRECT_RADIUS, HYP2F1_INTEGER_TOL, HYP2F1_MAX_TERMS, HYP2F1_TERM_RTOL
from polymellin.errors import Unsupported
from polymellin.special.gamma import gamma_scalar, rgamma


def _series(a: complex, b: complex, c: complex, z: complex, *, rtol: float, max_terms: int) -> complex:
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    quiet = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if term == 0:
            return total
        quiet = quiet + 1 if abs(term) <= rtol * abs(total) else 0
        if quiet >= 2:
            return total
    raise Unsupported(f"2F1 series at z={z} did not settle within {max_terms} terms")


def _power(base: complex, exponent: complex) -> complex:
    return complex(cmath.exp(exponent * cmath.log(base)))


def _near_integer(value: complex) -> bool:
    return abs(value.imag) < HYP2F1_INTEGER_TOL and abs(value.real - round(value.real)) < HYP2F1_INTEGER_TOL


def _rg(value: complex) -> complex:
    return complex(rgamma(value))


def gauss_value_at_one(a: complex, b: complex) -> complex:
    """₂F₁(a, b; 1; 1) = Γ(1−a−b) / (Γ(1−a)Γ(1−b)), valid for Re(1−a−b) > 0."""

    if (1 - a - b).real <= 0:
        raise Unsupported(f"2F1(a,b;1;1) diverges for Re(1-a-b) = {(1 - a - b).real:.6g} <= 0")
    return gamma_scalar(1 - a - b) * _rg(1 - a) * _rg(1 - b)


def gauss_2f1(
    a: complex,
    b: complex,
    z: complex,
    *,
    rtol: float = HYP2F1_TERM_RTOL,
    max_terms: int = HYP2F1_MAX_TERMS,
) -> complex:
    """Evaluate ₂F₁(a, b; 1; z).

    The series runs in whichever of z, z/(z−1), 1−z and 1/z is smallest, the
    plain and Pfaff variables first. The 1−z and 1/z connection formulas need
    1−a−b and a−b off the integers respectively. Real z > 1 lies on the branch cut
    and raises Unsupported. z = 1 uses Gauss's theorem.
    """

    a, b, z = complex(a), complex(b), complex(z)
    if z == 0:
        return 1.0 + 0.0j
    if abs(z - 1) < 1e-15:
        return gauss_value_at_one(a, b)
    if z.imag == 0 and z.real > 1:
        raise Unsupported(f"z={z} lies on the branch cut z > 1")

    def series(p: complex, q: complex, c: complex, at: complex) -> complex:
        return _series(p, q, c, at, rtol=rtol, max_terms=max_terms)

    def direct() -> complex:
        return series(a, b, 1, z)

    def pfaff() -> complex:
        return _power(1 - z, -a) * series(a, 1 - b, 1, z / (z - 1))

    def around_one() -> complex:
        w = 1 - z
        regular = gamma_scalar(1 - a - b) * _rg(1 - a) * _rg(1 - b) * series(a, b, a + b, w)
        singular = _power(w, 1 - a - b) * gamma_scalar(a + b - 1) * _rg(a) * _rg(b) * series(1 - a, 1 - b, 2 - a - b, w)
        return regular + singular

    def around_infinity() -> complex:
        w = 1 / z
        first = gamma_scalar(b - a) * _rg(b) * _rg(1 - a) * _power(-z, -a) * series(a, a, a - b + 1, w)
        second = gamma_scalar(a - b) * _rg(a) * _rg(1 - b) * _power(-z, -b) * series(b, b, b - a + 1, w)
        return first + second

    candidates: list[tuple[float, Callable[[], complex]]] = [(abs(z), direct), (abs(z / (z - 1)), pfaff)]
    if not _near_integer(1 - a - b):
        candidates.append((abs(1 - z), around_one))
    if not _near_integer(a - b):
        candidates.append((abs(1 / z), around_infinity))

    for modulus, evaluate in candidates[:2]:
        if modulus <= HYP2F1_DIRECT_RADIUS:
            return evaluate()
    modulus, evaluate = min(candidates, key=lambda candidate: candidate[0])
    if modulus < 1:
        return evaluate()
    raise Unsupported(f"no Euler/Pfaff or connection transformation maps z={z} into the unit disk")


def euler_transformations(a: complex, b: complex, z: complex) -> tuple[complex, complex, complex]:
    """Right-hand sides of the three classical transformations of ₂F₁(a, b; 1; z).

    (1−z)^{1−a−b} F(1−a, 1−b; 1; z), (1−z)^{−a} F(a, 1−b; 1; z/(z−1)),
    (1−z)^{−b} F(1−a, b; 1; z/(z−1)); each equals F(a, b; 1; z).
    """

    a, b, z = complex(a), complex(b), complex(z)
    pfaff = z / (z - 1)
    return (
        _power(1 - z, 1 - a - b) * gauss_2f1(1 - a, 1 - b, z),
        _power(1 - z, -a) * gauss_2f1(a, 1 - b, pfaff),
        _power(1 - z, -b) * gauss_2f1(1 - a, b, pfaff),
    )
