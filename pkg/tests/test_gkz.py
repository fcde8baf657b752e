from __future__ import annotations

import logging

import numpy as np
import pytest

from polymellin.algebra.integer import integer_kernel
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.config.models import GkzSettings
from polymellin.errors import InvariantViolation, OnDiscriminant
from polymellin.gkz import (
    AMatrix,
    KernelVector,
    a_matrix_kernel,
    box_integrands,
    box_residual,
    euler_residual,
    gkz_check,
    symbolic_degree_identity,
)
from polymellin.mellin.transform import TubePoint


def _poly(*terms: tuple[tuple[int, ...], int]) -> LaurentPolynomial:
    total = LaurentPolynomial.zero(len(terms[0][0]))
    for exponent, value in terms:
        total = total + LaurentPolynomial.monomial(exponent, value)
    return total


def _simplex() -> LaurentPolynomial:
    return _poly(((0, 0), 1), ((1, 0), 1), ((0, 1), 1))


def _square(a4: float = 0.5) -> LaurentPolynomial:
    return LaurentPolynomial.from_terms(2, {(0, 0): 1.0, (1, 0): 1.0, (0, 1): 1.0, (1, 1): a4})


def test_square_kernel() -> None:
    matrix, kernel = a_matrix_kernel(_square())

    assert matrix.columns == ((1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1))
    assert [vector.b for vector in kernel] == [(1, -1, -1, 1)]


def test_simplex_kernel_is_empty() -> None:
    _, kernel = a_matrix_kernel(_simplex())

    assert kernel == []


def test_repeated_columns_give_a_difference_vector() -> None:
    assert integer_kernel([[1, 1], [2, 2]]) == [(1, -1)]


def test_large_kernel_entries_are_dropped(caplog: pytest.LogCaptureFixture) -> None:
    f = _poly(((0,), 1), ((1,), 1), ((2,), 1))

    assert [vector.b for vector in a_matrix_kernel(f)[1]] == [(1, -2, 1)]
    with caplog.at_level(logging.WARNING, logger="polymellin"):
        _, kernel = a_matrix_kernel(f, GkzSettings(max_kernel_entry=1))

    assert kernel == []
    assert "dropped 1 kernel vectors" in caplog.text


def test_kernel_vector_parts() -> None:
    vector = KernelVector(b=(1, -2, 1))

    assert vector.plus == (1, 0, 1)
    assert vector.minus == (0, 2, 0)
    assert vector.order == 2
    assert vector.max_entry == 2


def test_degree_identity_is_zero() -> None:
    assert symbolic_degree_identity(_square()).is_zero
    assert symbolic_degree_identity(_simplex()).is_zero


def test_square_box_integrands_coincide() -> None:
    plus, minus = box_integrands(_square(), KernelVector(b=(1, -1, -1, 1)))

    assert (plus.exponent, plus.power) == ((1, 1), 3)
    assert (minus.exponent, minus.power) == ((1, 1), 3)
    assert plus.sign == minus.sign == 1
    assert plus.factorial == 2


def test_non_kernel_vector_is_an_invariant_violation() -> None:
    with pytest.raises(InvariantViolation):
        box_integrands(_square(), KernelVector(b=(1, -1, 0, 0)))


def test_zero_vector_has_zero_residual() -> None:
    result = box_residual(_square(), (0, 0, 0, 0), TubePoint.at((0.3, 0.4)))

    assert result.residual == 0.0
    assert result.plus is None


def test_euler_residuals_of_simplex() -> None:
    result = euler_residual(_simplex(), TubePoint.at((0.4, 0.3)))

    assert len(result.residuals) == 3
    assert max(result.residuals) < 1e-6
    assert len(result.derivatives) == 3


def test_gkz_check_on_the_square() -> None:
    report = gkz_check(_square(0.5), TubePoint.at((0.3, 0.4)))

    assert [vector.b for vector in report.kernel] == [(1, -1, -1, 1)]
    assert len(report.boxes) == 1
    assert report.max_residual < 1e-6


def test_residuals_survive_rescaling() -> None:
    f = _square(0.5)
    s = TubePoint.at((0.3, 0.4), (0.2, -0.1))
    scaled = LaurentPolynomial.from_terms(2, {exponent: 2 * complex(value) for exponent, value in f.terms})

    assert euler_residual(f, s).residuals == pytest.approx(euler_residual(scaled, s).residuals, abs=1e-8)


def test_discriminant_locus_is_rejected() -> None:
    f = _poly(((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1))

    with pytest.raises(OnDiscriminant):
        euler_residual(f, TubePoint.at((0.3, 0.4)))
    with pytest.raises(OnDiscriminant):
        box_residual(f, (1, -1, -1, 1), TubePoint.at((0.3, 0.4)))


def test_a_matrix_rows() -> None:
    matrix = AMatrix.of(_simplex())

    assert matrix.rows() == [[1, 1, 1], [0, 0, 1], [0, 1, 0]]
    assert matrix.exponents == ((0, 0), (0, 1), (1, 0))


@pytest.mark.parametrize("seed", [6, 19])
def test_box_residual_of_a_trinomial_is_within_its_error_estimate(seed: int) -> None:
    c1, c2 = (float(v) for v in np.random.default_rng(seed).uniform(0.5, 2.0, size=2))
    f = LaurentPolynomial.from_terms(1, {(0,): 1.0, (1,): 2 * c1, (2,): c2})
    result = box_residual(f, (1, -2, 1), TubePoint.at((0.7,)))

    assert result.plus is not None
    assert result.minus is not None
    assert abs(result.plus.value - result.minus.value) <= 10 * result.err_estimate
    assert result.residual < 1e-6
