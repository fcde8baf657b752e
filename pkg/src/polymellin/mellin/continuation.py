"""Meromorphic continuation of M_{1/f} by integration by parts along facet directions.

After |m| steps the transform is written as

    M_{1/f}(s) = M_{g_m / f^{1+|m|}}(s) / ∏_j ∏_{ℓ<m_j} (⟨μ_j, s⟩ − ν_j + ℓ),

and the right-hand side converges for σ in the enlarged polytope Δ(ν − m).
The numerators g_m are built in exact Gaussian-rational arithmetic whenever
the coefficients of f allow it.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from polymellin.algebra.laurent import (
    LaurentPolynomial,
    exact_or_complex,
    weighted_euler_derivative,
)
from polymellin.coamoeba import ArgDirection
from polymellin.config.models import ContinuationSettings, DecaySettings, QuadratureSpec
from polymellin.errors import DomainError, InvariantViolation, PoleHit
from polymellin.geometry.polytope import Facet, NewtonPolytope, ShiftedPolytope, dot, facet_representation
from polymellin.mellin.transform import MellinValue, TubePoint, mellin_eval
from polymellin.special.gamma import distance_to_gamma_pole, rgamma

logger = logging.getLogger(__name__)

_PERTURBATION_DIRECTION = (1.0, math.sqrt(2.0), math.sqrt(3.0))


@dataclass(frozen=True, slots=True)
class GammaSkeleton:
    """∏_k Γ(⟨μ_k, s⟩ − ν_k), one factor per facet in the polytope's facet order."""

    factors: tuple[Facet, ...]

    def arguments(self, s: TubePoint) -> list[complex]:
        values = s.values()
        return [complex(dot(facet.mu, values)) - facet.nu for facet in self.factors]

    def reciprocal(self, s: TubePoint) -> complex:
        return complex(np.prod(rgamma(np.array(self.arguments(s)))))

    def polar_hyperplanes(self, depth: int) -> list[tuple[int, tuple[int, ...], int]]:
        """(facet index, μ_k, level) for ⟨μ_k, s⟩ = level, level = ν_k − ℓ, ℓ = 0..depth−1."""

        return [
            (index, facet.mu, facet.nu - shift)
            for index, facet in enumerate(self.factors)
            for shift in range(depth)
        ]

    def nearest_pole(self, s: TubePoint) -> float:
        return min(distance_to_gamma_pole(value) for value in self.arguments(s))


@dataclass(frozen=True, slots=True)
class PoleFactor:
    """u(s) = ⟨μ, s⟩ − ν + shift."""

    facet: int
    mu: tuple[int, ...]
    nu: int
    shift: int

    def __call__(self, s: TubePoint) -> complex:
        return complex(dot(self.mu, s.values())) - self.nu + self.shift


@dataclass(frozen=True, slots=True)
class ContinuationState:
    m: tuple[int, ...]
    numerator: LaurentPolynomial
    power: int
    u_factors: tuple[PoleFactor, ...]
    polytope: NewtonPolytope

    @property
    def domain(self) -> ShiftedPolytope:
        """Δ(ν − m), where the continued integral converges."""

        return ShiftedPolytope(
            normals=self.polytope.normals,
            gamma=tuple(nu - shift for nu, shift in zip(self.polytope.offsets, self.m, strict=True)),
        )

    def u_product(self, s: TubePoint) -> complex:
        return math.prod((factor(s) for factor in self.u_factors), start=1 + 0j)


def gamma_skeleton(f: LaurentPolynomial) -> GammaSkeleton:
    return GammaSkeleton(factors=facet_representation(f.support).facets)


def _check_containment(g: LaurentPolynomial, polytope: NewtonPolytope, m: Sequence[int]) -> None:
    total = sum(m)
    for exponent in g.support:
        for index, facet in enumerate(polytope.facets):
            bound = total * facet.nu + m[index]
            if dot(facet.mu, exponent) < bound:
                raise InvariantViolation(
                    f"exponent {exponent} of g_m leaves Δ(|m|ν+m) on facet {index} "
                    f"(⟨μ,α⟩={dot(facet.mu, exponent)} < {bound}) at m={tuple(m)}"
                )


def continue_to_m(
    f: LaurentPolynomial,
    m: Sequence[int],
    *,
    order: Sequence[int] | None = None,
) -> ContinuationState:
    """Run the integration-by-parts recursion up to the multi-index m.

    Steps go through the facets in ascending index, facet k repeated m_k
    times, unless ``order`` lists the facet indices explicitly. Each step is

        g_{m+e_k} = (1+|m|)·g_{e_k}·g_m − f·E(g_m),

    with g_{e_k} the weighted Euler derivative of f for (μ_k, ν_k) and E the
    one of g_m for (μ_k, |m|ν_k + m_k). Containment of supp g_m in
    Δ(|m|ν + m) is checked exactly after every step.
    """

    polytope = facet_representation(f.support)
    target = tuple(int(value) for value in m)
    if len(target) != len(polytope.facets):
        raise ValueError(f"m has {len(target)} entries but the polytope has {len(polytope.facets)} facets")
    if any(value < 0 for value in target):
        raise ValueError(f"m must be componentwise nonnegative, got {target}")

    steps = [index for index, count in enumerate(target) for _ in range(count)] if order is None else list(order)
    if sorted(steps) != sorted(index for index, count in enumerate(target) for _ in range(count)):
        raise ValueError(f"step order {tuple(steps)} does not add up to m={target}")

    base = exact_or_complex(f, purpose="the continuation recursion")
    numerator = LaurentPolynomial.constant(1, f.nvars)
    if not base.is_exact:
        numerator = numerator.to_complex()
    derivatives: dict[int, LaurentPolynomial] = {}
    current = [0] * len(target)
    factors: list[PoleFactor] = []

    for index in steps:
        facet = polytope.facets[index]
        if index not in derivatives:
            derivatives[index] = weighted_euler_derivative(base, facet.mu, facet.nu)
        total = sum(current)
        lowered = weighted_euler_derivative(numerator, facet.mu, total * facet.nu + current[index])
        numerator = (derivatives[index] * numerator).scale(1 + total) - base * lowered
        factors.append(PoleFactor(facet=index, mu=facet.mu, nu=facet.nu, shift=current[index]))
        current[index] += 1
        _check_containment(numerator, polytope, current)
        logger.debug("continuation step on facet %d: m=%s, %d terms", index, tuple(current), len(numerator))

    factors.sort(key=lambda factor: (factor.facet, factor.shift))
    return ContinuationState(
        m=target,
        numerator=numerator,
        power=1 + sum(target),
        u_factors=tuple(factors),
        polytope=polytope,
    )


def continued_mellin_eval(
    state: ContinuationState,
    f: LaurentPolynomial,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    settings: ContinuationSettings | None = None,
    decay: DecaySettings | None = None,
) -> MellinValue:
    """M_{1/f}(s) through the continued representation of ``state``."""

    config = settings or ContinuationSettings()
    for factor in state.u_factors:
        residual = abs(factor(s))
        if residual <= config.pole_tol:
            raise PoleHit(facet=factor.facet, shift=factor.shift, residual=residual)
    if not state.domain.contains(s.sigma, strict=True):
        raise DomainError(f"sigma={s.sigma} is not strictly inside Δ(ν−m) for m={state.m}", module="continuation")

    integral = mellin_eval(state.numerator, f, state.power, s, theta, spec, decay=decay)
    divisor = state.u_product(s)
    return MellinValue(
        value=integral.value / divisor,
        err_estimate=integral.err_estimate / abs(divisor),
        spec=integral.spec,
        refinements=integral.refinements,
    )


@dataclass(frozen=True, slots=True)
class PhiValue:
    value: complex
    m: tuple[int, ...]
    point: TubePoint
    perturbation: tuple[float, ...] | None
    mellin: MellinValue
    gamma_reciprocal: complex


def auto_m(polytope: NewtonPolytope, sigma: Sequence[float], margin: float = 0.0) -> tuple[int, ...]:
    """Smallest m ≥ 0 with ⟨μ_k, σ⟩ − ν_k + m_k > margin for every facet."""

    return tuple(
        max(0, math.floor(facet.nu - float(dot(facet.mu, sigma)) + margin) + 1) for facet in polytope.facets
    )


def phi_eval(
    f: LaurentPolynomial,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    settings: ContinuationSettings | None = None,
    decay: DecaySettings | None = None,
) -> PhiValue:
    """Φ(s) = M_{1/f}(s) / ∏_k Γ(⟨μ_k, s⟩ − ν_k), using the smallest sufficient m.

    Points within the gamma-pole tolerance are moved off the pole along
    +i·(1, √2, √3)[:n]; the shift is reported in ``perturbation``.
    """

    config = settings or ContinuationSettings()
    polytope = facet_representation(f.support)
    skeleton = GammaSkeleton(factors=polytope.facets)
    perturbation: tuple[float, ...] | None = None
    point = s
    if skeleton.nearest_pole(s) <= config.gamma_pole_tol:
        perturbation = tuple(config.perturbation * value for value in _PERTURBATION_DIRECTION[: s.dim])
        point = s.shifted_t(perturbation)
        logger.warning("s=%s lies on a gamma pole; evaluating at t shifted by %s", s.values(), perturbation)

    state = continue_to_m(f, auto_m(polytope, point.sigma, config.auto_margin))
    continued = continued_mellin_eval(state, f, point, theta, spec, settings=config, decay=decay)
    reciprocal = skeleton.reciprocal(point)
    return PhiValue(
        value=continued.value * reciprocal,
        m=state.m,
        point=point,
        perturbation=perturbation,
        mellin=continued,
        gamma_reciprocal=reciprocal,
    )
