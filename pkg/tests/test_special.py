from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from scipy import special as sp

from polymellin.errors import Unsupported
from polymellin.special.gamma import distance_to_gamma_pole, gamma, gamma_scalar, loggamma, rgamma
from polymellin.special.hypergeometric import euler_transformations, gauss_2f1, gauss_value_at_one

POINTS = [0.3, 1.7, 5.5, -0.5, -2.25, 0.5 + 3j, -1.5 + 0.2j, 2 - 7j, 0.01 + 40j]


@pytest.mark.parametrize("z", POINTS)
def test_gamma_matches_scipy(z: complex) -> None:
    assert cmath.isclose(gamma_scalar(complex(z)), complex(sp.gamma(complex(z))), rel_tol=1e-12)


def test_gamma_is_vectorized() -> None:
    values = gamma(np.array([[1.0, 2.0], [3.0, 4.0]]))

    assert values.shape == (2, 2)
    np.testing.assert_allclose(values.real, [[1.0, 1.0], [2.0, 6.0]], rtol=1e-13)


def test_loggamma_exponentiates_to_gamma() -> None:
    z = np.array([0.2 + 1j, -3.3 + 0.5j, 10 - 2j])

    np.testing.assert_allclose(np.exp(loggamma(z)), gamma(z), rtol=1e-12)


def test_reflection_formula() -> None:
    z = 0.3 + 0.4j

    assert cmath.isclose(gamma_scalar(z) * gamma_scalar(1 - z), math.pi / cmath.sin(math.pi * z), rel_tol=1e-12)


def test_rgamma_vanishes_at_poles() -> None:
    values = rgamma(np.array([0.0, -1.0, -7.0]))

    assert np.all(values == 0)
    assert complex(rgamma(0.5)) == pytest.approx(1 / math.sqrt(math.pi))


def test_distance_to_gamma_pole() -> None:
    assert distance_to_gamma_pole(-2.1 + 0j) == pytest.approx(0.1)
    assert distance_to_gamma_pole(1e-3 + 0j) == pytest.approx(1e-3)
    assert distance_to_gamma_pole(4.0 + 0j) == pytest.approx(4.0)


@pytest.mark.parametrize(
    ("a", "b", "z"),
    [
        (0.3, 0.4, 0.5),
        (0.3, 0.4, 0.1),
        (0.3, 0.4, -0.5),
        (1.2, -0.7, 0.95),
        (0.25, 0.5, -3.0),
    ],
)
def test_gauss_2f1_matches_scipy(a: float, b: float, z: float) -> None:
    assert cmath.isclose(gauss_2f1(a, b, z), complex(sp.hyp2f1(a, b, 1.0, z)), rel_tol=1e-11)


def test_gauss_2f1_at_zero_and_one() -> None:
    assert gauss_2f1(0.3, 0.4, 0) == 1
    expected = sp.gamma(0.3) / (sp.gamma(0.7) * sp.gamma(0.6))
    assert cmath.isclose(gauss_2f1(0.3, 0.4, 1), expected, rel_tol=1e-12)
    assert cmath.isclose(gauss_value_at_one(0.3, 0.4), expected, rel_tol=1e-12)


def test_gauss_value_at_one_diverges() -> None:
    with pytest.raises(Unsupported):
        gauss_value_at_one(0.6, 0.5)


def test_euler_transformations_agree() -> None:
    a, b, z = 0.3 + 0.1j, 0.4, 0.3 - 0.2j
    reference = gauss_2f1(a, b, z)

    for value in euler_transformations(a, b, z):
        assert cmath.isclose(value, reference, rel_tol=1e-12)


def test_complex_parameters_on_negative_axis() -> None:
    a, b = 0.3 + 2j, 0.4 - 1j
    direct = gauss_2f1(a, b, -0.5)
    _, pfaff, _ = euler_transformations(a, b, -0.5)

    assert cmath.isclose(direct, pfaff, rel_tol=1e-12)


@pytest.mark.parametrize(
    ("a", "b", "z"),
    [
        (0.3, 0.4, 2 + 1j),
        (0.3, 0.4, -5 + 0.5j),
        (0.3, 0.4, 0.9 + 0.4j),
        (1.2, -0.7, 1.2 + 0.3j),
        (0.25, 0.5, 0.6 - 4j),
    ],
)
def test_gauss_2f1_outside_the_unit_disk(a: float, b: float, z: complex) -> None:
    assert cmath.isclose(gauss_2f1(a, b, z), complex(sp.hyp2f1(a, b, 1.0, z)), rel_tol=1e-10)


def test_gauss_2f1_refuses_the_branch_cut() -> None:
    with pytest.raises(Unsupported, match="branch cut"):
        gauss_2f1(0.3, 0.4, 3.0)
