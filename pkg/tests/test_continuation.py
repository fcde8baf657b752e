from __future__ import annotations

import cmath
import itertools
import math

import numpy as np
import pytest
from scipy import special as sp

from polymellin.algebra.coefficients import to_complex
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.errors import DomainError, PoleHit
from polymellin.geometry.polytope import affine_rank, dot, facet_representation
from polymellin.mellin.continuation import (
    auto_m,
    continue_to_m,
    continued_mellin_eval,
    gamma_skeleton,
    phi_eval,
)
from polymellin.mellin.transform import TubePoint, mellin_eval
from polymellin.special.hypergeometric import gauss_2f1


def _poly(*terms: tuple[tuple[int, ...], int]) -> LaurentPolynomial:
    total = LaurentPolynomial.zero(len(terms[0][0]))
    for exponent, value in terms:
        total = total + LaurentPolynomial.monomial(exponent, value)
    return total


def _simplex() -> LaurentPolynomial:
    return _poly(((0, 0), 1), ((1, 0), 1), ((0, 1), 1))


def _four_term() -> LaurentPolynomial:
    return _poly(((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((1, 2), 1))


def _complex_dict(p: LaurentPolynomial) -> dict[tuple[int, ...], complex]:
    return {exponent: to_complex(value) for exponent, value in p.terms}


def _simplex_closed_form(s1: complex, s2: complex) -> complex:
    return complex(sp.gamma(s1) * sp.gamma(s2) * sp.gamma(1 - s1 - s2))


def _random_polynomial(seed: int) -> LaurentPolynomial:
    rng = np.random.default_rng(seed)
    while True:
        exponents = {tuple(int(v) for v in rng.integers(0, 4, size=2)) for _ in range(5)}
        if len(exponents) == 5 and affine_rank(sorted(exponents)) == 2:
            break
    values = [int(v) for v in rng.choice([-3, -2, -1, 1, 2, 3], size=5)]
    return _poly(*zip(sorted(exponents), values, strict=True))


_SIMPLEX_INTERIOR = [(0.2, 0.3), (0.3, 0.2), (0.25, 0.25), (0.1, 0.6), (0.5, 0.3)]


def test_first_step_on_each_facet() -> None:
    f = _four_term()
    first = continue_to_m(f, (1, 0, 0, 0))
    second = continue_to_m(f, (0, 1, 0, 0))

    assert first.power == 2
    assert first.numerator.is_exact
    assert _complex_dict(first.numerator) == {(1, 2): 1, (2, 0): 2}
    assert _complex_dict(second.numerator) == {(0, 0): 1, (2, 0): 3}

    s = TubePoint.at((0.4, 0.7))
    assert first.u_product(s) == pytest.approx(0.4)
    assert second.u_product(s) == pytest.approx(0.4 - 0.7 + 1)


def test_zero_step_is_the_plain_transform() -> None:
    state = continue_to_m(_simplex(), (0, 0, 0))

    assert state.power == 1
    assert state.u_factors == ()
    assert _complex_dict(state.numerator) == {(0, 0): 1}


@pytest.mark.parametrize(
    "f",
    [
        _four_term(),
        _simplex(),
        _poly(((0, 0), 1), ((1, 0), 2), ((0, 1), 3), ((1, 1), 5)),
        _poly(((0, 0), 2), ((3, 1), 1), ((1, 3), -1), ((1, 1), 1), ((2, 2), 4)),
    ],
)
def test_support_stays_in_shifted_polytope_up_to_order_four(f: LaurentPolynomial) -> None:
    facets = len(facet_representation(f.support).facets)
    for m in itertools.product(range(5), repeat=facets):
        if sum(m) > 4:
            continue
        state = continue_to_m(f, m)
        assert state.power == 1 + sum(m)
        assert len(state.u_factors) == sum(m)


@pytest.mark.parametrize("seed", [3, 11, 29])
def test_support_stays_in_shifted_polytope_for_random_polynomials(seed: int) -> None:
    f = _random_polynomial(seed)
    polytope = facet_representation(f.support)
    for m in itertools.product(range(5), repeat=len(polytope.facets)):
        if sum(m) > 4:
            continue
        state = continue_to_m(f, m)
        for exponent in state.numerator.support:
            for index, facet in enumerate(polytope.facets):
                assert dot(facet.mu, exponent) >= sum(m) * facet.nu + m[index]


def test_continuation_rejects_bad_multi_index() -> None:
    with pytest.raises(ValueError):
        continue_to_m(_simplex(), (1, 0))
    with pytest.raises(ValueError):
        continue_to_m(_simplex(), (-1, 0, 0))
    with pytest.raises(ValueError):
        continue_to_m(_simplex(), (1, 0, 0), order=[1])


def test_continued_value_left_of_the_original_domain() -> None:
    state = continue_to_m(_simplex(), (1, 0, 0))
    result = continued_mellin_eval(state, _simplex(), TubePoint.at((-0.5, 0.8)))

    assert cmath.isclose(result.value, _simplex_closed_form(-0.5, 0.8), rel_tol=1e-6)


@pytest.mark.parametrize("m", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
@pytest.mark.parametrize("sigma", _SIMPLEX_INTERIOR)
def test_continued_value_agrees_on_the_overlap(sigma: tuple[float, float], m: tuple[int, int, int]) -> None:
    s = TubePoint.at(sigma)
    plain = mellin_eval(LaurentPolynomial.constant(1, 2), _simplex(), 1, s)
    state = continue_to_m(_simplex(), m)
    continued = continued_mellin_eval(state, _simplex(), s)

    assert cmath.isclose(continued.value, plain.value, rel_tol=1e-8)


@pytest.mark.parametrize("sigma", [(-0.5, -0.3), (0.2, -0.6), (-0.7, 0.4), (-0.2, -0.8), (0.5, -0.2)])
def test_step_order_does_not_change_the_transform(sigma: tuple[float, float]) -> None:
    f = _simplex()
    forward = continue_to_m(f, (1, 1, 0), order=[0, 1])
    backward = continue_to_m(f, (1, 1, 0), order=[1, 0])

    s = TubePoint.at(sigma, (0.1, -0.2))
    left = continued_mellin_eval(forward, f, s).value
    right = continued_mellin_eval(backward, f, s).value

    assert cmath.isclose(left, right, rel_tol=1e-8)


def test_polar_hyperplane_is_rejected() -> None:
    state = continue_to_m(_simplex(), (1, 0, 0))

    with pytest.raises(PoleHit) as excinfo:
        continued_mellin_eval(state, _simplex(), TubePoint.at((0.0, 0.5)))

    assert excinfo.value.facet == 0
    assert excinfo.value.shift == 0


def test_outside_the_continued_domain_is_rejected() -> None:
    state = continue_to_m(_simplex(), (1, 0, 0))

    with pytest.raises(DomainError):
        continued_mellin_eval(state, _simplex(), TubePoint.at((-1.5, 0.8)))


def test_residue_at_the_first_pole() -> None:
    state = continue_to_m(_simplex(), (1, 0, 0))
    s1 = 1e-3
    value = continued_mellin_eval(state, _simplex(), TubePoint.at((s1, 0.6))).value

    assert abs(s1 * value - sp.gamma(0.6) * sp.gamma(0.4)) < 1e-2


def test_gamma_skeleton_of_simplex() -> None:
    skeleton = gamma_skeleton(_simplex())
    s = TubePoint.at((0.2, 0.3))

    assert skeleton.arguments(s) == pytest.approx([0.2, 0.3, 0.5])
    assert skeleton.reciprocal(s) == pytest.approx(1 / (sp.gamma(0.2) * sp.gamma(0.3) * sp.gamma(0.5)))
    assert skeleton.polar_hyperplanes(2)[:2] == [(0, (1, 0), 0), (0, (1, 0), -1)]


def test_auto_m_picks_the_smallest_shift() -> None:
    polytope = facet_representation(_simplex().support)

    assert auto_m(polytope, (0.2, 0.3)) == (0, 0, 0)
    assert auto_m(polytope, (-0.5, 0.8)) == (1, 0, 0)
    assert auto_m(polytope, (0.9, 0.6)) == (0, 0, 1)
    assert auto_m(polytope, (-2.5, 0.3)) == (3, 0, 0)


def test_phi_of_simplex_is_one() -> None:
    result = phi_eval(_simplex(), TubePoint.at((0.2, 0.3)))

    assert result.m == (0, 0, 0)
    assert result.perturbation is None
    assert cmath.isclose(result.value, 1.0, rel_tol=1e-6)


def test_phi_continues_across_the_domain() -> None:
    result = phi_eval(_simplex(), TubePoint.at((-1.4, 0.6), (0.3, 0.0)))

    assert result.m[0] == 2
    assert cmath.isclose(result.value, 1.0, rel_tol=1e-6)


@pytest.mark.parametrize(
    ("sigma", "t"),
    [
        ((0.2, 0.3), (0.0, 0.0)),
        ((0.6, 0.1), (0.4, -0.2)),
        ((0.1, 0.7), (-0.3, 0.0)),
        ((-0.5, 0.8), (0.0, 0.0)),
        ((-1.4, 0.6), (0.3, 0.0)),
        ((0.3, -0.7), (0.0, 0.2)),
        ((-0.3, -0.4), (0.1, 0.1)),
        ((0.9, 0.6), (0.0, 0.0)),
        ((1.3, 0.4), (-0.2, 0.3)),
        ((-0.6, 1.2), (0.0, -0.4)),
    ],
)
def test_phi_of_simplex_is_one_everywhere(sigma: tuple[float, float], t: tuple[float, float]) -> None:
    result = phi_eval(_simplex(), TubePoint.at(sigma, t))

    assert cmath.isclose(result.value, 1.0, rel_tol=1e-5)


def test_phi_on_a_gamma_pole_is_perturbed() -> None:
    result = phi_eval(_simplex(), TubePoint.at((0.0, 0.5)))

    assert result.perturbation is not None
    assert result.point.t != (0.0, 0.0)
    assert cmath.isclose(result.value, 1.0, rel_tol=1e-5)


def test_phi_of_product_of_linear_factors() -> None:
    f = _poly(((0,), 1), ((1,), 3), ((2,), 2))
    s = 0.5
    result = phi_eval(f, TubePoint.at((s,)))

    assert result.value == pytest.approx((2 ** (1 - s) - 1) / (1 - s), rel=1e-6)


def test_phi_of_one_plus_z_squared() -> None:
    f = _poly(((0,), 1), ((2,), 1))

    assert phi_eval(f, TubePoint.at((1.0,))).value == pytest.approx(math.pi / 2, rel=1e-6)


@pytest.mark.parametrize("a4", [0.5, 0.9, 1.5])
def test_phi_of_unit_square_is_hypergeometric(a4: float) -> None:
    f = LaurentPolynomial.from_terms(2, {(0, 0): 1.0, (1, 0): 1.0, (0, 1): 1.0, (1, 1): a4})
    result = phi_eval(f, TubePoint.at((0.3, 0.4)))

    assert cmath.isclose(result.value, gauss_2f1(0.3, 0.4, 1 - a4), rel_tol=1e-6)
