"""Closed-form Mellin transforms and entire factors used as ground truth for quadrature."""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from polymellin.algebra.coefficients import to_complex
from polymellin.algebra.integer import rational_inverse
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.coamoeba import companion_roots
from polymellin.config.models import QuadratureSpec
from polymellin.constants import DEFAULT_TANH_SINH_LEVEL, MAX_GRID_POINTS, ROOT_SEPARATION_TOL, SIMPLEX_MAX_DIM
from polymellin.errors import DomainError, NoConvergence, OnDiscriminant, RepeatedRoot, SingularMatrix, Unsupported
from polymellin.mellin.quadrature import tanh_sinh_unit
from polymellin.mellin.transform import TubePoint
from polymellin.special.gamma import gamma, rgamma
from polymellin.special.hypergeometric import gauss_2f1

logger = logging.getLogger(__name__)

MellinFunction = Callable[[NDArray[np.complex128]], NDArray[np.complex128]]

_UNIT_SQUARE = ((0, 0), (1, 0), (0, 1), (1, 1))


def _values(s: TubePoint | ArrayLike) -> NDArray[np.complex128]:
    """Accept a TubePoint, a complex sequence or an array of shape (..., n)."""

    if isinstance(s, TubePoint):
        return s.s
    return np.asarray(s, dtype=np.complex128)


def _positive(values: Sequence[complex] | Sequence[float], name: str) -> NDArray[np.float64]:
    array = np.asarray(values, dtype=np.complex128)
    if np.any(array.imag != 0) or np.any(array.real <= 0):
        raise DomainError(
            f"{name} must be positive reals, got {tuple(complex(v) for v in array)}",
            module="special_oracles",
        )
    return array.real


@dataclass(frozen=True, slots=True)
class LinearForm:
    """c₀ + c₁z₁ + … + c_n z_n."""

    coeffs: tuple[complex, ...]

    @property
    def nvars(self) -> int:
        return len(self.coeffs) - 1

    def polynomial(self) -> LaurentPolynomial:
        n = self.nvars
        terms = [((0,) * n, self.coeffs[0])]
        terms += [(tuple(int(axis == k) for axis in range(n)), value) for k, value in enumerate(self.coeffs[1:])]
        return LaurentPolynomial(n, tuple((exp, complex(value)) for exp, value in terms))

    def at(self, z: ArrayLike) -> NDArray[np.complex128]:
        points = np.asarray(z, dtype=np.complex128)
        return np.asarray(self.coeffs[0] + points @ np.asarray(self.coeffs[1:], dtype=np.complex128))


def linear_fraction_mellin(c: LinearForm | Sequence[float], s: TubePoint | ArrayLike) -> complex:
    """Mellin transform of 1/(c₀ + Σ c_k z_k): c₀^{Σs−1} ∏ c_k^{−s_k} ∏Γ(s_k) Γ(1−Σs_k)."""

    coeffs = _positive(c.coeffs if isinstance(c, LinearForm) else c, "linear form coefficients")
    values = _values(s)
    if len(coeffs) != values.shape[-1] + 1:
        raise ValueError(f"{len(coeffs)} coefficients do not match s of length {values.shape[-1]}")
    if np.any(values.real <= 0) or values.real.sum() >= 1:
        raise DomainError(
            f"linear_fraction_mellin needs Re s_k > 0 and Σ Re s_k < 1, got {tuple(values)}",
            module="special_oracles",
        )
    return complex(_linear_fraction_values(coeffs, values))


def _linear_fraction_values(coeffs: NDArray[np.float64], s: NDArray[np.complex128]) -> NDArray[np.complex128]:
    total = s.sum(axis=-1)
    logs = np.log(coeffs)
    scale = np.exp((total - 1) * logs[0] - s @ logs[1:])
    return np.asarray(scale * np.prod(gamma(s), axis=-1) * gamma(1 - total))


def _simplex_rule(m: int, level: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Barycentric nodes (P, m+1) and weights on the standard m-simplex via the Duffy map.

    τ_j = u_j ∏_{i<j}(1−u_i); the last barycentric coordinate is ∏(1−u_i),
    built from the tanh-sinh complements so it stays accurate near 0.
    """

    nodes, complements, weights = tanh_sinh_unit(level)
    index = np.stack(np.meshgrid(*([np.arange(nodes.size)] * m), indexing="ij"), axis=-1).reshape(-1, m)
    u, uc = nodes[index], complements[index]
    weight = np.prod(weights[index], axis=1)

    barycentric = np.empty((index.shape[0], m + 1))
    remaining = np.ones(index.shape[0])
    for j in range(m):
        barycentric[:, j + 1] = u[:, j] * remaining
        remaining = remaining * uc[:, j]
        weight = weight * uc[:, j] ** (m - 1 - j)
    barycentric[:, 0] = remaining
    return barycentric, weight


def simplex_integral(
    integrand: Callable[[NDArray[np.float64]], NDArray[np.complex128]],
    m: int,
    *,
    tol: float,
    level: int = DEFAULT_TANH_SINH_LEVEL,
    max_refine: int = 4,
) -> complex:
    """∫ over the standard m-simplex of integrand(λ), λ the barycentric coordinates (λ₀ = 1 − Στ)."""

    if m < 1 or m > SIMPLEX_MAX_DIM:
        raise Unsupported(f"simplex quadrature covers 1 ≤ m ≤ {SIMPLEX_MAX_DIM}, got m={m}")

    def estimate(at_level: int) -> complex:
        barycentric, weight = _simplex_rule(m, at_level)
        return complex(np.sum(integrand(barycentric) * weight))

    value = estimate(level)
    diff = math.inf
    for step in range(1, max_refine + 1):
        if (12 * 2 ** (level + step - 3) + 1) ** m > MAX_GRID_POINTS:
            break
        refined = estimate(level + step)
        diff = abs(refined - value)
        value = refined
        if diff <= tol * abs(value):
            return value
    raise NoConvergence(
        message="simplex quadrature did not settle", value=value, err_estimate=diff, refinements=max_refine
    )


def _vertex_rows(a: Sequence[Sequence[float]]) -> NDArray[np.float64]:
    rows = np.asarray(a, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] < 2:
        raise ValueError("need at least two coefficient vectors a_0, ..., a_m")
    if np.any(rows < 0) or np.any(rows.max(axis=0) <= 0):
        raise DomainError(
            "every coefficient vector must be nonnegative with each coordinate positive somewhere",
            module="special_oracles",
        )
    return rows


def product_linear_phi(a: Sequence[Sequence[float]], s: object, spec: QuadratureSpec | None = None) -> complex:
    """∫_{σ_m} ∏_k α_k(τ)^{−s_k} dτ with α(τ) = (1−Στ)a₀ + Σ τ_j a_j.

    Times ∏Γ(s_k)·Γ(m+1−Σs_k) this is the Mellin transform of
    ∏_j (1 + ⟨a_j, z⟩)^{−1}.
    """

    rows = _vertex_rows(a)
    values = _values(s)
    if values.shape[-1] != rows.shape[1]:
        raise ValueError(f"s has {values.shape[-1]} entries but the vectors a_j have {rows.shape[1]}")
    tol = (spec or QuadratureSpec()).tol

    def integrand(barycentric: NDArray[np.float64]) -> NDArray[np.complex128]:
        alpha = barycentric @ rows
        with np.errstate(divide="ignore"):
            return np.asarray(np.exp(-(np.log(alpha) @ values)))

    return simplex_integral(integrand, rows.shape[0] - 1, tol=tol)


def partial_fraction_check(
    a: Sequence[Sequence[float]],
    z: Sequence[float],
    spec: QuadratureSpec | None = None,
) -> tuple[complex, complex]:
    """Both sides of 1/∏(1+⟨a_k,z⟩) = m!∫_{σ_m}(1+⟨α(τ),z⟩)^{−(m+1)}dτ."""

    rows = _vertex_rows(a)
    point = np.asarray(z, dtype=np.complex128)
    m = rows.shape[0] - 1
    forms = 1 + rows @ point
    lhs = complex(1 / np.prod(forms))
    tol = (spec or QuadratureSpec()).tol

    def integrand(barycentric: NDArray[np.float64]) -> NDArray[np.complex128]:
        return np.asarray((barycentric @ forms) ** (-(m + 1)))

    rhs = math.factorial(m) * simplex_integral(integrand, m, tol=tol)
    return lhs, rhs


@dataclass(frozen=True, slots=True)
class MonomialChange:
    """f = c₀ + Σ_k c_k z^{α_k} with linearly independent α_k."""

    determinant: int
    beta: NDArray[np.float64]
    constant: float
    scales: NDArray[np.float64]

    @classmethod
    def build(cls, alphas: Sequence[Sequence[int]], coeffs: Sequence[float] | None = None) -> MonomialChange:
        n = len(alphas)
        determinant, inverse = rational_inverse(alphas)
        beta = np.array([[float(inverse[row][col]) for row in range(n)] for col in range(n)])
        values = _positive(coeffs if coeffs is not None else [1.0] * (n + 1), "coefficients")
        return cls(determinant=abs(determinant), beta=beta, constant=float(values[0]), scales=values[1:])

    def arguments(self, s: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return np.asarray(s @ self.beta.T)

    def values(self, s: NDArray[np.complex128]) -> NDArray[np.complex128]:
        args = self.arguments(s)
        total = args.sum(axis=-1)
        log_ratio = math.log(self.constant) - np.log(self.scales)
        prefactor = np.exp(args @ log_ratio) / (self.constant * self.determinant)
        return np.asarray(prefactor * np.prod(gamma(args), axis=-1) * gamma(1 - total))


def monomial_change_mellin(alphas: Sequence[Sequence[int]], s: TubePoint | ArrayLike) -> complex:
    """Mellin transform of 1/(1 + Σ z^{α_k}): (1/δ) ∏Γ(⟨β_k, s⟩) Γ(1 − Σ⟨β_k, s⟩).

    β_k are the columns of the exact inverse of the matrix with rows α_k and
    δ = |det|.
    """

    change = MonomialChange.build(alphas)
    values = _values(s)
    args = change.arguments(values).real
    if np.any(args <= 0) or args.sum() >= 1:
        raise DomainError(
            f"need ⟨β_k, Re s⟩ > 0 and Σ⟨β_k, Re s⟩ < 1, got {tuple(args)}",
            module="special_oracles",
        )
    return complex(change.values(values))


def _check_roots(roots: NDArray[np.complex128]) -> None:
    for i in range(roots.size):
        for j in range(i + 1, roots.size):
            if abs(roots[i] - roots[j]) <= ROOT_SEPARATION_TOL * max(1.0, abs(roots[i])):
                raise RepeatedRoot(f"roots {roots[i]} and {roots[j]} coincide")
    arguments = np.mod(np.angle(roots), 2 * math.pi)
    if np.any(arguments == 0) or np.any(roots == 0):
        raise DomainError("roots on the closed positive real axis are not allowed", module="special_oracles")


def one_var_psi(roots: Sequence[complex], lead: complex, s: ArrayLike) -> NDArray[np.complex128] | complex:
    """Ψ(s) = −e^{−iπs} Σ_j z_j^{s−1} / f'(z_j) with arg z_j taken in (0, 2π).

    M_{1/f}(s) = Ψ(s)·Γ(s)Γ(1−s) for 0 < Re s < deg f. ``s`` may be an array.
    """

    zs = np.asarray(roots, dtype=np.complex128)
    _check_roots(zs)
    derivative = np.array(
        [complex(lead) * np.prod([zj - zi for i, zi in enumerate(zs) if i != j]) for j, zj in enumerate(zs)]
    )
    log_roots = np.log(np.abs(zs)) + 1j * np.mod(np.angle(zs), 2 * math.pi)
    points = np.asarray(s, dtype=np.complex128)
    terms = np.exp(np.multiply.outer(points - 1, log_roots)) / derivative
    value = -np.exp(-1j * math.pi * points) * np.sum(terms, axis=-1)
    return complex(value) if np.ndim(value) == 0 else np.asarray(value)


def psi_zero_check(roots: Sequence[complex], lead: complex) -> list[float]:
    """|Ψ(k)| for k = 1..deg−1; all vanish for a genuine polynomial."""

    return [abs(complex(one_var_psi(roots, lead, k))) for k in range(1, len(roots))]


def psi_mellin(roots: Sequence[complex], lead: complex, s: ArrayLike) -> NDArray[np.complex128] | complex:
    points = np.asarray(s, dtype=np.complex128)
    value = np.asarray(one_var_psi(roots, lead, points)) * gamma(points) * gamma(1 - points)
    return complex(value) if np.ndim(value) == 0 else value


def psi_from_polynomial(f: LaurentPolynomial) -> tuple[NDArray[np.complex128], complex]:
    """Roots and leading coefficient of a one-variable polynomial with nonzero constant term."""

    if f.nvars != 1:
        raise Unsupported("the residue formula is for one variable")
    exponents = [exponent[0] for exponent in f.support]
    if min(exponents) != 0 or max(exponents) < 1:
        raise Unsupported("need a polynomial with nonzero constant term and positive degree")
    degree = max(exponents)
    row = np.zeros((1, degree + 1), dtype=np.complex128)
    for exponent, value in f.to_complex().terms:
        row[0, degree - exponent[0]] = complex(value)
    return companion_roots(row)[0], complex(row[0, 0])


def example3_discriminant(a: Sequence[complex]) -> complex:
    """E_A(a) = a₁a₂a₃a₄(a₁a₄ − a₂a₃) for f = a₁ + a₂z₁ + a₃z₂ + a₄z₁z₂."""

    a1, a2, a3, a4 = (complex(value) for value in a)
    return a1 * a2 * a3 * a4 * (a1 * a4 - a2 * a3)


def _pow(base: complex, exponent: complex) -> complex:
    return complex(cmath.exp(exponent * cmath.log(base)))


def _rg(value: complex) -> complex:
    return complex(rgamma(value))


def example3_phi(a: Sequence[complex], s: TubePoint | ArrayLike) -> complex:
    """Φ for f = a₁ + a₂z₁ + a₃z₂ + a₄z₁z₂, normalized by Γ(s₁)Γ(s₂)Γ(1−s₁)Γ(1−s₂).

    Generic a gives a₁^{s₁+s₂−1}a₂^{−s₁}a₃^{−s₂}·₂F₁(s₁,s₂;1;1−a₁a₄/(a₂a₃)). A
    single vanishing coefficient switches to the matching closed form; two or
    more vanishing coefficients raise OnDiscriminant.
    """

    a1, a2, a3, a4 = (complex(value) for value in a)
    s1, s2 = (complex(value) for value in _values(s))
    zeros = [index for index, value in enumerate((a1, a2, a3, a4)) if value == 0]
    if len(zeros) > 1:
        raise OnDiscriminant(f"coefficients {tuple(i + 1 for i in zeros)} vanish together")

    if not zeros:
        z = 1 - a1 * a4 / (a2 * a3)
        return _pow(a1, s1 + s2 - 1) * _pow(a2, -s1) * _pow(a3, -s2) * gauss_2f1(s1, s2, z)
    if zeros == [3]:
        return (
            _pow(a1, s1 + s2 - 1) * _pow(a2, -s1) * _pow(a3, -s2)
            * complex(gamma(1 - s1 - s2)) * _rg(1 - s1) * _rg(1 - s2)
        )
    if zeros == [0]:
        return (
            _pow(a2, s2 - 1) * _pow(a3, s1 - 1) * _pow(a4, 1 - s1 - s2)
            * complex(gamma(s1 + s2 - 1)) * _rg(s1) * _rg(s2)
        )
    if zeros == [1]:
        if (s2 - s1).real <= 0:
            raise DomainError("with a₂ = 0 the transform needs Re(s₂ − s₁) > 0", module="special_oracles")
        return _pow(a1, s2 - 1) * _pow(a3, s1 - s2) * _pow(a4, -s1) * complex(gamma(s2 - s1)) * _rg(s2) * _rg(1 - s1)
    if (s1 - s2).real <= 0:
        raise DomainError("with a₃ = 0 the transform needs Re(s₁ − s₂) > 0", module="special_oracles")
    return _pow(a1, s1 - 1) * _pow(a2, s2 - s1) * _pow(a4, -s2) * complex(gamma(s1 - s2)) * _rg(s1) * _rg(1 - s2)


def example3_coefficients(f: LaurentPolynomial) -> tuple[complex, complex, complex, complex] | None:
    """(a₁, a₂, a₃, a₄) when supp f lies in the unit square, else None."""

    if f.nvars != 2 or any(exponent not in _UNIT_SQUARE for exponent in f.support):
        return None
    a1, a2, a3, a4 = (to_complex(f.coefficient(exponent)) for exponent in _UNIT_SQUARE)
    return a1, a2, a3, a4


def closed_form_mellin(f: LaurentPolynomial) -> MellinFunction:
    """Vectorized closed-form M_{1/f} for the shapes the oracles cover.

    Recognized: a positive constant plus n positive monomials with linearly
    independent exponents (linear forms, binomials, monomial changes), and
    one-variable polynomials with a nonzero constant term (residue formula).
    Anything else raises Unsupported.
    """

    terms = f.to_complex().terms
    origin = (0,) * f.nvars
    others = [(exponent, value) for exponent, value in terms if exponent != origin]
    if len(terms) == f.nvars + 1 and len(others) == f.nvars and terms[0][0] == origin:
        coefficients = [terms[0][1]] + [value for _, value in others]
        if all(complex(value).imag == 0 and complex(value).real > 0 for value in coefficients):
            try:
                change = MonomialChange.build([exponent for exponent, _ in others], [c.real for c in coefficients])
            except SingularMatrix:
                change = None
            if change is not None:
                logger.debug("closed_form_mellin: monomial change with det %d", change.determinant)
                return change.values

    if f.nvars == 1:
        roots, lead = psi_from_polynomial(f)

        def residue_form(s: NDArray[np.complex128]) -> NDArray[np.complex128]:
            return np.asarray(psi_mellin(roots, lead, np.asarray(s)[..., 0]))

        return residue_form

    raise Unsupported("no closed form is known for this denominator")
