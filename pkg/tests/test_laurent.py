from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from polymellin.algebra.coefficients import EXACT_ZERO, exact_from_fractions, is_exact, to_complex
from polymellin.algebra.integer import integer_kernel, rational_inverse
from polymellin.algebra.laurent import (
    LaurentPolynomial,
    LogPoint,
    evaluate_log,
    evaluate_log_grid,
    term_modulus_log,
    truncate_to_face,
    weighted_euler_derivative,
)
from polymellin.errors import EvaluationOverflow, SingularMatrix
from polymellin.geometry.polytope import affine_rank, enumerate_faces, facet_representation


def _poly(*terms: tuple[tuple[int, ...], int]) -> LaurentPolynomial:
    total = LaurentPolynomial.zero(len(terms[0][0]))
    for exponent, value in terms:
        total = total + LaurentPolynomial.monomial(exponent, value)
    return total


def _four_term() -> LaurentPolynomial:
    return _poly(((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((1, 2), 1))


def _complex_dict(p: LaurentPolynomial) -> dict[tuple[int, ...], complex]:
    return {exponent: to_complex(value) for exponent, value in p.terms}


def test_terms_are_sorted_and_zeros_dropped() -> None:
    p = _poly(((1, 1), 2), ((0, 0), 1), ((1, 0), 1), ((0, 1), 3), ((0, 1), -3))

    assert p.support == ((0, 0), (1, 0), (1, 1))
    assert p.is_exact


def test_float_coefficients_are_complex() -> None:
    p = LaurentPolynomial.from_terms(1, {(0,): 1.5, (2,): 0.25})

    assert not p.is_exact
    assert p.coefficient((2,)) == 0.25
    assert p.coefficient((1,)) == 0
    assert isinstance(p.coefficient((1,)), complex)


def test_missing_coefficient_of_exact_polynomial_is_exact_zero() -> None:
    p = _poly(((0, 0), 1), ((1, 1), 2))
    missing = p.coefficient((1, 0))

    assert is_exact(missing)
    assert missing == EXACT_ZERO


def test_exact_and_complex_mix_to_complex() -> None:
    p = LaurentPolynomial.constant(1, 1) + LaurentPolynomial.monomial((1,), 0.5)

    assert not p.is_exact
    assert _complex_dict(p) == {(0,): 1, (1,): 0.5}


def test_to_exact_recovers_short_rationals() -> None:
    p = LaurentPolynomial.from_terms(1, {(0,): 0.5, (1,): 3.0})
    exact = p.to_exact()

    assert exact is not None
    assert all(is_exact(value) for _, value in exact.terms)
    assert exact.coefficient((0,)) == exact_from_fractions(Fraction(1, 2))


def test_evaluate_log_simplex() -> None:
    f = _poly(((0, 0), 1), ((1, 0), 1), ((0, 1), 1))

    assert evaluate_log(f, LogPoint.at((0.0, 0.0))) == pytest.approx(3.0)
    zero = LogPoint.at((0.0, 0.0), (2 * math.pi / 3, -2 * math.pi / 3))
    assert abs(evaluate_log(f, zero)) < 1e-14


def test_evaluate_log_overflow() -> None:
    f = _poly(((0,), 1), ((1,), 1))

    with pytest.raises(EvaluationOverflow):
        evaluate_log(f, LogPoint.at((1000.0,)))


def test_grid_evaluation_stays_finite_far_out() -> None:
    f = _poly(((0,), 1), ((1,), 1))
    x = np.array([[0.0], [2000.0]])
    mantissa, shift = evaluate_log_grid(f, x, np.zeros((2, 1)))

    assert mantissa[0] * math.exp(shift[0]) == pytest.approx(2.0)
    assert shift[1] == pytest.approx(2000.0)
    assert mantissa[1] == pytest.approx(1.0)


def test_term_modulus_log() -> None:
    f = _poly(((0,), 1), ((1,), 2))

    assert float(term_modulus_log(f, np.array([0.0]))) == pytest.approx(math.log(3.0))


def test_truncate_to_face_keeps_edge_terms() -> None:
    f = _four_term()
    polytope = facet_representation(f.support)
    edge = next(face for face in enumerate_faces(polytope, f.support) if face.facet_indices == (3,))

    assert _complex_dict(truncate_to_face(f, edge)) == {(1, 2): 1, (2, 0): 1}


def test_weighted_euler_derivative_on_first_facet() -> None:
    g = weighted_euler_derivative(_four_term(), (1, 0), 0)

    assert g.is_exact
    assert _complex_dict(g) == {(1, 2): 1, (2, 0): 2}


def test_weighted_euler_derivative_on_second_facet() -> None:
    g = weighted_euler_derivative(_four_term(), (1, -1), -1)

    assert _complex_dict(g) == {(0, 0): 1, (2, 0): 3}


def test_weighted_euler_derivative_vanishes_on_homogeneous_part() -> None:
    edge = _poly(((1, 2), 1), ((2, 0), 1))

    assert weighted_euler_derivative(edge, (-2, -1), -4).is_zero


def test_multiply_binomial_square() -> None:
    p = _poly(((0,), 1), ((1,), 1))
    square = p * p

    assert square.is_exact
    assert _complex_dict(square) == {(0,): 1, (1,): 2, (2,): 1}


def test_subtract_to_zero() -> None:
    f = _four_term()

    assert (f - f).is_zero


def test_integer_kernel_of_unit_square() -> None:
    rows = [[1, 1, 1, 1], [0, 0, 1, 1], [0, 1, 0, 1]]

    assert integer_kernel(rows) == [(1, -1, -1, 1)]


def test_integer_kernel_of_full_rank_matrix_is_empty() -> None:
    assert integer_kernel([[1, 1, 1], [0, 1, 0], [0, 0, 1]]) == []


def test_rational_inverse() -> None:
    determinant, inverse = rational_inverse([[2, 1], [1, 2]])

    assert determinant == 3
    assert inverse == [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]]


def test_rational_inverse_singular() -> None:
    with pytest.raises(SingularMatrix):
        rational_inverse([[1, 2], [2, 4]])


def test_exact_evaluation_matches_complex_copy() -> None:
    f = _four_term()
    at = LogPoint.at((0.3, -0.2), (0.5, 1.1))

    assert cmath.isclose(evaluate_log(f, at), evaluate_log(f.to_complex(), at), rel_tol=1e-14)


def _random_polynomial(rng: np.random.Generator, nvars: int, count: int) -> LaurentPolynomial:
    while True:
        exponents = sorted({tuple(int(v) for v in row) for row in rng.integers(-2, 3, size=(count, nvars))})
        if len(exponents) > nvars and affine_rank(exponents) == nvars:
            break
    values = [int(v) for v in rng.choice([-3, -2, -1, 1, 2, 3], size=len(exponents))]
    return _poly(*zip(exponents, values, strict=True))


@pytest.mark.parametrize("seed", [0, 8, 42])
def test_truncating_through_a_face_equals_truncating_to_the_subface(seed: int) -> None:
    rng = np.random.default_rng(seed)
    f = _random_polynomial(rng, 2, 9)
    faces = enumerate_faces(facet_representation(f.support), f.support)

    for face in faces:
        outer = truncate_to_face(f, face)
        for subface in faces:
            if set(face.facet_indices) < set(subface.facet_indices):
                assert truncate_to_face(outer, subface) == truncate_to_face(f, subface)


@pytest.mark.parametrize("seed", [1, 9, 27])
def test_evaluation_is_multiplicative(seed: int) -> None:
    rng = np.random.default_rng(seed)
    p, q = _random_polynomial(rng, 2, 4), _random_polynomial(rng, 2, 4)

    for _ in range(20):
        at = LogPoint.at(rng.uniform(-1.5, 1.5, size=2).tolist(), rng.uniform(-math.pi, math.pi, size=2).tolist())
        scale = math.exp(float(term_modulus_log(p, np.array(at.x))) + float(term_modulus_log(q, np.array(at.x))))
        product = evaluate_log(p * q, at)
        assert abs(product - evaluate_log(p, at) * evaluate_log(q, at)) <= 1e-12 * scale


@pytest.mark.parametrize("seed", [3, 14, 15])
def test_evaluation_is_two_pi_periodic_in_theta(seed: int) -> None:
    rng = np.random.default_rng(seed)
    p = _random_polynomial(rng, 3, 6)

    for _ in range(20):
        x = rng.uniform(-1.0, 1.0, size=3).tolist()
        theta = rng.uniform(-math.pi, math.pi, size=3)
        lift = 2 * math.pi * rng.integers(-3, 4, size=3)
        scale = math.exp(float(term_modulus_log(p, np.array(x))))
        base = evaluate_log(p, LogPoint.at(x, theta.tolist()))
        assert abs(evaluate_log(p, LogPoint.at(x, (theta + lift).tolist())) - base) <= 1e-12 * scale
