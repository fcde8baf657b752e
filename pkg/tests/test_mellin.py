from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from numpy.typing import NDArray
from scipy import special as sp

from polymellin.algebra.laurent import LaurentPolynomial, LogPoint
from polymellin.coamoeba import ArgDirection
from polymellin.config.models import QuadratureSpec
from polymellin.errors import DegeneratePolytope, DomainError, NearZeroDenominator, UnsupportedDimension
from polymellin.mellin.transform import (
    TubePoint,
    convergence_domain,
    decay_check,
    inverse_mellin_eval,
    laurent_coefficient,
    laurent_partial_sum,
    mellin_eval,
    shift_factor,
)


def _poly(*terms: tuple[tuple[int, ...], int]) -> LaurentPolynomial:
    total = LaurentPolynomial.zero(len(terms[0][0]))
    for exponent, value in terms:
        total = total + LaurentPolynomial.monomial(exponent, value)
    return total


def _simplex() -> LaurentPolynomial:
    return _poly(((0, 0), 1), ((1, 0), 1), ((0, 1), 1))


def _one() -> LaurentPolynomial:
    return LaurentPolynomial.constant(1, 2)


def _simplex_closed_form(s: tuple[complex, complex]) -> complex:
    s1, s2 = s
    return complex(sp.gamma(s1) * sp.gamma(s2) * sp.gamma(1 - s1 - s2))


@pytest.mark.parametrize(
    "s",
    [
        (0.3, 0.3),
        (0.25, 0.45),
        (0.45, 0.25),
        (0.3 + 0.5j, 0.35 - 0.3j),
        (0.35 + 1.0j, 0.3),
    ],
)
def test_simplex_transform_matches_gamma_product(s: tuple[complex, complex]) -> None:
    point = TubePoint.from_complex(s)
    result = mellin_eval(_one(), _simplex(), 1, point)

    assert cmath.isclose(result.value, _simplex_closed_form(point.values()), rel_tol=1e-6)
    assert result.refinements >= 1


def test_one_plus_z_gives_pi() -> None:
    f = _poly(((0,), 1), ((1,), 1))
    result = mellin_eval(LaurentPolynomial.constant(1, 1), f, 1, TubePoint.at((0.5,)))

    assert result.value == pytest.approx(math.pi, rel=1e-8)


def test_one_plus_z_cubed() -> None:
    f = _poly(((0,), 1), ((3,), 1))
    result = mellin_eval(LaurentPolynomial.constant(1, 1), f, 1, TubePoint.at((1.2,)))
    expected = sp.gamma(0.4) * sp.gamma(0.6) / 3

    assert result.value == pytest.approx(expected, rel=1e-8)


def test_direction_inside_the_same_component_gives_the_same_value() -> None:
    point = TubePoint.at((0.3, 0.3))
    base = mellin_eval(_one(), _simplex(), 1, point)
    tilted = mellin_eval(_one(), _simplex(), 1, point, (0.1, -0.1))

    assert cmath.isclose(tilted.value, base.value, rel_tol=1e-6)


def test_two_pi_lift_multiplies_by_shift_factor() -> None:
    point = TubePoint.at((0.3, 0.3), (0.2, 0.0))
    direction = ArgDirection.of((2 * math.pi, 0.0))
    base = mellin_eval(_one(), _simplex(), 1, point)
    lifted = mellin_eval(_one(), _simplex(), 1, point, direction)

    assert direction.theta == (0.0, 0.0)
    assert direction.lift == (1, 0)
    assert cmath.isclose(lifted.value, shift_factor(point, direction.lift) * base.value, rel_tol=1e-8)


def test_outside_the_domain_is_rejected() -> None:
    with pytest.raises(DomainError):
        mellin_eval(_one(), _simplex(), 1, TubePoint.at((0.7, 0.6)))


def test_zero_numerator_short_circuits() -> None:
    result = mellin_eval(LaurentPolynomial.zero(2), _simplex(), 1, TubePoint.at((5.0, 5.0)))

    assert result.value == 0
    assert result.err_estimate == 0


def test_zero_denominator_is_a_domain_error() -> None:
    with pytest.raises(DomainError):
        mellin_eval(_one(), LaurentPolynomial.zero(2), 1, TubePoint.at((0.3, 0.3)))


def test_four_dimensions_are_unsupported() -> None:
    f = _poly(((0, 0, 0, 0), 1), ((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1), ((0, 0, 1, 0), 1), ((0, 0, 0, 1), 1))

    with pytest.raises(UnsupportedDimension):
        mellin_eval(LaurentPolynomial.constant(1, 4), f, 1, TubePoint.at((0.1,) * 4))


def test_convergence_domain_of_simplex() -> None:
    domain = convergence_domain(_one(), _simplex())

    assert domain.polytope.gamma == (0, 0, -1)
    assert domain.nonempty
    assert domain.contains((0.5, 0.25))
    assert not domain.contains((0.5, 0.5))


def test_convergence_domain_with_numerator_and_power() -> None:
    f = _poly(((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((1, 2), 1))
    g = _poly(((2, 0), 2), ((1, 2), 1))
    domain = convergence_domain(g, f, 2)

    assert domain.polytope.gamma == (-1, -1, 0, -4)
    assert len(domain.inequalities) == 8
    assert domain.contains((-0.5, 0.3))
    assert not domain.contains((-0.5, 0.8))


def test_convergence_domain_can_be_empty() -> None:
    g = LaurentPolynomial.monomial((3, 0), 1) + LaurentPolynomial.monomial((-3, 0), 1)
    domain = convergence_domain(g, _simplex())

    assert not domain.nonempty
    assert domain.interior_point is None


def test_single_monomial_has_no_domain() -> None:
    with pytest.raises(DegeneratePolytope):
        convergence_domain(_one(), LaurentPolynomial.monomial((1, 1), 2))


def test_decay_rate_is_positive_inside_and_not_outside() -> None:
    inside = decay_check(_simplex(), (1 / 3, 1 / 3))
    outside = decay_check(_simplex(), (0.7, 0.6))

    assert inside.k > 0
    assert outside.k <= 0
    assert outside.radius_for(1e-9, 1.0) is None


def test_decay_estimate_is_deterministic() -> None:
    first = decay_check(_simplex(), (0.2, 0.3))
    second = decay_check(_simplex(), (0.2, 0.3))

    assert first == second


def test_laurent_coefficients_of_simplex_in_the_far_component() -> None:
    f = _simplex()
    x = (-10.0, -10.0)

    assert cmath.isclose(laurent_coefficient(f, (0, 0), x), 1.0, abs_tol=1e-8)
    assert cmath.isclose(laurent_coefficient(f, (1, 1), x), 2.0, abs_tol=1e-8)
    assert cmath.isclose(laurent_coefficient(f, (2, 0), x), 1.0, abs_tol=1e-8)


def test_laurent_coefficient_of_one_plus_z() -> None:
    f = _poly(((0,), 1), ((1,), 1))

    assert cmath.isclose(laurent_coefficient(f, (3,), (-10.0,)), -1.0, abs_tol=1e-6)
    assert cmath.isclose(laurent_coefficient(f, (-3,), (10.0,)), 1.0, abs_tol=1e-6)
    assert abs(laurent_coefficient(f, (3,), (10.0,))) < 1e-10


def test_laurent_coefficient_on_the_amoeba_is_rejected() -> None:
    f = _poly(((0,), 1), ((1,), 1))

    with pytest.raises(NearZeroDenominator):
        laurent_coefficient(f, (0,), (0.0,))


def test_laurent_partial_sum_recovers_the_function() -> None:
    f = _poly(((0,), 1), ((1,), 1))
    at = LogPoint.at((-3.0,), (0.4,))
    total = laurent_partial_sum(f, at, [(0, 40)])

    assert cmath.isclose(total, 1 / (1 + cmath.exp(complex(-3.0, 0.4))), rel_tol=1e-8)


def _binomial_transform(s: NDArray[np.complex128]) -> NDArray[np.complex128]:
    values = s[..., 0]
    return np.asarray(sp.gamma(values) * sp.gamma(1 - values))


def _simplex_transform(s: NDArray[np.complex128]) -> NDArray[np.complex128]:
    s1, s2 = s[..., 0], s[..., 1]
    return np.asarray(sp.gamma(s1) * sp.gamma(s2) * sp.gamma(1 - s1 - s2))


@pytest.mark.parametrize(
    ("sigma", "x", "theta"),
    [
        (0.5, 0.0, 0.0),
        (0.4, 0.5, math.pi / 3),
        (0.6, -1.0, -math.pi / 4),
    ],
)
def test_inverse_transform_of_binomial(sigma: float, x: float, theta: float) -> None:
    value = inverse_mellin_eval(_binomial_transform, (sigma,), LogPoint.at((x,), (theta,)))

    assert cmath.isclose(value, 1 / (1 + cmath.exp(complex(x, theta))), rel_tol=1e-6)


@pytest.mark.parametrize("x", [(0.0, 0.0), (0.5, -0.3), (-0.4, 0.2)])
def test_inverse_transform_of_simplex(x: tuple[float, float]) -> None:
    spec = QuadratureSpec(radius=30.0)
    value = inverse_mellin_eval(_simplex_transform, (1 / 3, 1 / 3), LogPoint.at(x), spec)

    assert cmath.isclose(value, 1 / (1 + math.exp(x[0]) + math.exp(x[1])), rel_tol=1e-6)
