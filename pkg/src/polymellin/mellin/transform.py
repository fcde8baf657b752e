"""Directional Mellin transforms of g/f^p over Arg⁻¹(θ) and related quadratures.

The forward transform carries no prefactor:

    M(s) = ∫_{ℝⁿ} e^{⟨s, x+iθ⟩} g(e^{x+iθ}) / f(e^{x+iθ})^p dx,

and inversion carries (2π)^{−n} in t-coordinates. Laurent coefficients use
the +α convention (c_α multiplies z^α).
"""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from polymellin.algebra.laurent import LaurentPolynomial, LogPoint, evaluate_log_grid
from polymellin.coamoeba import ArgDirection
from polymellin.config.models import DecaySettings, LaurentSettings, QuadratureSpec
from polymellin.constants import (
    DEFAULT_INVERSE_RADIUS,
    MAX_AUTO_RADIUS,
    MAX_GRID_POINTS,
    MAX_QUADRATURE_DIM,
    MIN_AUTO_RADIUS,
)
from polymellin.errors import (
    DegeneratePolytope,
    DomainError,
    NearZeroDenominator,
    NoConvergence,
    UnsupportedDimension,
)
from polymellin.geometry.polytope import NewtonPolytope, ShiftedPolytope, dot, facet_representation
from polymellin.mellin.quadrature import integrate_adaptive, periodic_nodes

logger = logging.getLogger(__name__)

MellinFunction = Callable[[NDArray[np.complex128]], NDArray[np.complex128]]
"""Vectorized transform: maps an array of points s with shape (..., n) to values of shape (...)."""

# Extra decades of tail suppression on top of tol when sizing the box.
_TAIL_MARGIN = math.log(1e3)


@dataclass(frozen=True, slots=True)
class TubePoint:
    """s = σ + it."""

    sigma: tuple[float, ...]
    t: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.sigma) != len(self.t):
            raise ValueError(f"sigma has {len(self.sigma)} entries but t has {len(self.t)}")

    @classmethod
    def at(cls, sigma: Sequence[float], t: Sequence[float] | None = None) -> TubePoint:
        real = tuple(float(value) for value in sigma)
        imag = tuple(float(value) for value in t) if t is not None else (0.0,) * len(real)
        return cls(sigma=real, t=imag)

    @classmethod
    def from_complex(cls, values: Sequence[complex]) -> TubePoint:
        return cls(sigma=tuple(complex(v).real for v in values), t=tuple(complex(v).imag for v in values))

    @property
    def dim(self) -> int:
        return len(self.sigma)

    @property
    def s(self) -> NDArray[np.complex128]:
        return np.array(self.sigma, dtype=np.float64) + 1j * np.array(self.t, dtype=np.float64)

    def values(self) -> tuple[complex, ...]:
        return tuple(complex(re, im) for re, im in zip(self.sigma, self.t, strict=True))

    def shifted_t(self, delta: Sequence[float]) -> TubePoint:
        return TubePoint(sigma=self.sigma, t=tuple(a + b for a, b in zip(self.t, delta, strict=True)))


@dataclass(frozen=True, slots=True)
class MellinValue:
    value: complex
    err_estimate: float
    spec: QuadratureSpec
    refinements: int = 0


@dataclass(frozen=True, slots=True)
class DecayEstimate:
    """Fitted bound |f|^p/|g| · e^{−⟨σ,x⟩} ≥ c·e^{k|x|} along the sampled rays."""

    c: float
    k: float
    rays: int
    ray_radius: float

    def radius_for(self, tol: float, peak: float) -> float | None:
        """Box radius where the integrand bound e^{−k R}/c falls below tol·peak, or None if k ≤ 0."""

        if self.k <= 0 or not math.isfinite(self.k):
            return None
        level = math.log(1.0 / (self.c * tol * max(peak, 1e-300))) + _TAIL_MARGIN
        return level / self.k


@dataclass(frozen=True, slots=True)
class DomainInequality:
    """⟨μ_k, σ⟩ > bound, contributed by numerator monomial β on facet k."""

    facet: int
    mu: tuple[int, ...]
    bound: int
    beta: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class ConvergenceDomain:
    polytope: ShiftedPolytope
    power: int
    inequalities: tuple[DomainInequality, ...]
    nonempty: bool
    interior_point: tuple[Fraction, ...] | None

    def contains(self, sigma: Sequence[float | Fraction | int]) -> bool:
        return self.polytope.contains(sigma, strict=True)


def _check_dim(n: int) -> None:
    if n > MAX_QUADRATURE_DIM:
        raise UnsupportedDimension(f"quadrature is limited to n ≤ {MAX_QUADRATURE_DIM}, got n={n}")


def _coerce_theta(theta: ArgDirection | Sequence[float] | None, n: int) -> ArgDirection:
    if theta is None:
        return ArgDirection.of((0.0,) * n)
    direction = theta if isinstance(theta, ArgDirection) else ArgDirection.of(theta)
    if direction.dim != n:
        raise ValueError(f"theta has {direction.dim} entries, polynomial has {n} variables")
    return direction


def shift_factor(s: TubePoint, lift: Sequence[int]) -> complex:
    """e^{2πi⟨lift, s⟩}: M over θ + 2π·lift equals this times M over θ."""

    return complex(cmath.exp(2j * math.pi * sum(k * v for k, v in zip(lift, s.values(), strict=True))))


def convergence_domain(
    g: LaurentPolynomial,
    f: LaurentPolynomial,
    power: int = 1,
    *,
    polytope: NewtonPolytope | None = None,
) -> ConvergenceDomain:
    """Region of σ where ∫ z^{s} g/f^p dz/z converges: ⟨μ_k, σ+β⟩ > p·ν_k for all β ∈ supp g.

    An empty intersection is reported through ``nonempty``, not raised.
    """

    if power < 1:
        raise ValueError(f"power must be ≥ 1, got {power}")
    if g.nvars != f.nvars:
        raise ValueError(f"numerator has {g.nvars} variables, denominator has {f.nvars}")
    hull = polytope if polytope is not None else facet_representation(f.support)
    numerator = g.support if not g.is_zero else ((0,) * f.nvars,)

    inequalities = []
    gamma = []
    for index, facet in enumerate(hull.facets):
        bounds = [(power * facet.nu - int(dot(facet.mu, beta)), beta) for beta in numerator]
        inequalities.extend(
            DomainInequality(facet=index, mu=facet.mu, bound=bound, beta=beta) for bound, beta in bounds
        )
        gamma.append(max(bound for bound, _ in bounds))

    shifted = ShiftedPolytope(normals=hull.normals, gamma=tuple(gamma))
    interior = shifted.interior_point()
    return ConvergenceDomain(
        polytope=shifted,
        power=power,
        inequalities=tuple(inequalities),
        nonempty=interior is not None,
        interior_point=interior,
    )


def _log_modulus(p: LaurentPolynomial, x: NDArray[np.float64], theta: NDArray[np.float64]) -> NDArray[np.float64]:
    mantissa, shift = evaluate_log_grid(p, x, theta)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(mantissa)) + shift


def _ray_directions(f: LaurentPolynomial, count: int, seed: int) -> NDArray[np.float64]:
    n = f.nvars
    directions: list[NDArray[np.float64]] = []
    try:
        hull = facet_representation(f.support)
    except DegeneratePolytope:
        hull = None
    if hull is not None:
        for facet in hull.facets:
            mu = -np.array(facet.mu, dtype=np.float64)
            directions.append(mu / np.linalg.norm(mu))
    for axis in range(n):
        for sign in (1.0, -1.0):
            unit = np.zeros(n)
            unit[axis] = sign
            directions.append(unit)
    rng = np.random.default_rng(seed)
    extra = rng.standard_normal((count, n))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    directions.extend(extra)
    return np.array(directions)


def decay_check(
    f: LaurentPolynomial,
    sigma: Sequence[float],
    theta: ArgDirection | Sequence[float] | None = None,
    ray_count: int | None = None,
    *,
    g: LaurentPolynomial | None = None,
    power: int = 1,
    settings: DecaySettings | None = None,
) -> DecayEstimate:
    """Fit the exponential decay of the Mellin integrand along rays.

    Rays are the outward facet directions, the coordinate axes and
    ``ray_count`` seeded random unit vectors. Along each ray the log of
    |f|^p/|g| · e^{−⟨σ,x⟩} is fitted by a line on r ∈ [R/2, R]; k is the
    smallest slope and c the smallest constant consistent with it. A
    nonpositive k is a valid result, meaning σ is not inside the domain.
    """

    config = settings or DecaySettings()
    count = config.ray_count if ray_count is None else ray_count
    n = f.nvars
    direction = _coerce_theta(theta, n)
    directions = _ray_directions(f, count, config.seed)
    radii = np.linspace(config.ray_radius / 2, config.ray_radius, config.samples)

    points = directions[:, None, :] * radii[None, :, None]
    angles = np.array(direction.raw, dtype=np.float64)
    profile = power * _log_modulus(f, points, angles) - points @ np.asarray(sigma, dtype=np.float64)
    if g is not None:
        profile = profile - _log_modulus(g, points, angles)
    profile = np.nan_to_num(profile, neginf=-1e300, posinf=1e300)

    slopes, _ = np.polyfit(radii, profile.T, 1)
    k = float(np.min(slopes))
    c = float(np.exp(np.min(profile - k * radii[None, :])))
    logger.debug("decay_check: k=%.6g c=%.6g over %d rays", k, c, len(directions))
    return DecayEstimate(c=c, k=k, rays=len(directions), ray_radius=config.ray_radius)


def _mellin_integrand(
    g: LaurentPolynomial,
    f: LaurentPolynomial,
    power: int,
    s: TubePoint,
    direction: ArgDirection,
) -> Callable[[NDArray[np.float64]], NDArray[np.complex128]]:
    s_values = s.s
    angles = np.array(direction.raw, dtype=np.float64)
    phase = 1j * complex(np.dot(s_values, angles))

    def integrand(x: NDArray[np.float64]) -> NDArray[np.complex128]:
        mant_f, shift_f = evaluate_log_grid(f, x, angles)
        mant_g, shift_g = evaluate_log_grid(g, x, angles)
        exponent = x @ s_values + phase + shift_g - power * shift_f
        return np.asarray(np.exp(exponent) * mant_g / mant_f**power, dtype=np.complex128)

    return integrand


def _resolve_box(
    g: LaurentPolynomial,
    f: LaurentPolynomial,
    power: int,
    s: TubePoint,
    direction: ArgDirection,
    spec: QuadratureSpec,
    decay: DecaySettings | None,
) -> QuadratureSpec:
    n = f.nvars
    spec = spec.for_dim(n)
    if spec.radius is None:
        estimate = decay_check(f, s.sigma, direction, g=g, power=power, settings=decay)
        origin = np.zeros((1, n))
        peak = float(np.abs(_mellin_integrand(g, f, power, TubePoint.at(s.sigma), direction)(origin))[0])
        radius = estimate.radius_for(spec.tol, peak)
        if radius is None or radius > MAX_AUTO_RADIUS:
            logger.warning(
                "decay rate k=%.3g at sigma=%s is too small; truncation radius clipped to %g",
                estimate.k,
                s.sigma,
                MAX_AUTO_RADIUS,
            )
            radius = MAX_AUTO_RADIUS
        spec = spec.model_copy(update={"radius": (max(radius, MIN_AUTO_RADIUS),) * n})
    assert spec.radius is not None
    nodes = tuple(
        max(count, math.ceil(2 * radius / spec.max_step) + 1)
        for count, radius in zip(spec.nodes, spec.radius, strict=True)
    )
    return spec.model_copy(update={"nodes": nodes})


def mellin_eval(
    g: LaurentPolynomial,
    f: LaurentPolynomial,
    power: int,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    decay: DecaySettings | None = None,
) -> MellinValue:
    """Evaluate ∫ e^{⟨s, x+iθ⟩} g/f^p dx over ℝⁿ by adaptive tensor trapezoid.

    σ must lie strictly inside ``convergence_domain(g, f, power)``; whether
    f_Γ vanishes on Arg⁻¹(θ) is the caller's concern (see
    ``completely_nonvanishing_check``).
    """

    n = f.nvars
    _check_dim(n)
    if s.dim != n:
        raise ValueError(f"s has {s.dim} entries, polynomial has {n} variables")
    if f.is_zero:
        raise DomainError("the zero polynomial cannot be a Mellin denominator")
    spec = spec or QuadratureSpec()
    if g.is_zero:
        return MellinValue(value=0j, err_estimate=0.0, spec=spec.for_dim(n), refinements=0)

    domain = convergence_domain(g, f, power)
    if not domain.contains(s.sigma):
        raise DomainError(f"sigma={s.sigma} is not strictly inside the convergence domain for power {power}")

    direction = _coerce_theta(theta, n)
    resolved = _resolve_box(g, f, power, s, direction, spec, decay)
    result = integrate_adaptive(_mellin_integrand(g, f, power, s, direction), resolved, label="mellin_eval")
    return MellinValue(
        value=result.value,
        err_estimate=result.err_estimate,
        spec=result.spec,
        refinements=result.refinements,
    )


def _pivot(f: LaurentPolynomial, x: Sequence[float]) -> tuple[tuple[int, ...], complex]:
    terms = f.to_complex().terms
    log_moduli = [math.log(abs(complex(value))) + float(dot(exponent, x)) for exponent, value in terms]
    exponent, value = terms[int(np.argmax(log_moduli))]
    return exponent, complex(value)


def laurent_coefficient(
    f: LaurentPolynomial,
    alpha: Sequence[int],
    x: Sequence[float],
    spec: QuadratureSpec | None = None,
    *,
    settings: LaurentSettings | None = None,
) -> complex:
    """c_α with 1/f = Σ c_α z^α on Log⁻¹ of the amoeba complement component containing x.

    The dominant term p = a_v z^v at x is split off,
    1/f = 1/p − (f − p)/(p·f), so only the small remainder is integrated
    over the torus fiber; the periodic trapezoid rule is refined by node
    doubling.
    """

    config = settings or LaurentSettings()
    spec = spec or QuadratureSpec()
    n = f.nvars
    _check_dim(n)
    if f.is_zero:
        raise DomainError("the zero polynomial has no Laurent expansion")
    target = tuple(int(value) for value in alpha)
    xs = np.asarray(x, dtype=np.float64)
    pivot_exponent, pivot_value = _pivot(f, x)
    remainder = f - LaurentPolynomial.monomial(pivot_exponent, pivot_value)
    base = 1.0 / pivot_value if all(a == -v for a, v in zip(target, pivot_exponent, strict=True)) else 0j
    scale = math.exp(-float(dot(target, x)))
    pivot_log = math.log(abs(pivot_value)) + float(dot(pivot_exponent, x))
    term_scale = _term_sum_log(f, xs)

    def torus_mean(count: int) -> tuple[complex, float]:
        angles_1d, _ = periodic_nodes(count)
        angles = np.stack(np.meshgrid(*([angles_1d] * n), indexing="ij"), axis=-1)
        f_mant, f_shift = evaluate_log_grid(f, xs, angles)
        ratio = float(np.min(np.abs(f_mant) * np.exp(f_shift - term_scale)))
        if ratio < config.near_zero_ratio:
            raise NearZeroDenominator(f"min |f|/Σ|a|e^<α,x> = {ratio:.3e} on the fiber over x={tuple(x)}")
        r_mant, r_shift = evaluate_log_grid(remainder, xs, angles)
        pivot_phase = angles @ np.array(pivot_exponent, dtype=np.float64) + cmath.phase(pivot_value)
        target_phase = angles @ np.array(target, dtype=np.float64)
        values = np.exp(r_shift - f_shift - pivot_log - 1j * (pivot_phase + target_phase)) * r_mant / f_mant
        return complex(np.mean(values)), float(np.max(np.abs(values)))

    count = config.torus_nodes
    previous, _ = torus_mean(count)
    for step in range(1, spec.max_refine + 1):
        count *= 2
        if count**n > MAX_GRID_POINTS:
            break
        current, magnitude = torus_mean(count)
        diff = abs(current - previous) * scale
        value = base - scale * current
        # Below this floor the difference is rounding noise of the fiber sum.
        floor = 64 * np.finfo(np.float64).eps * scale * magnitude
        if diff <= max(spec.tol * abs(value), floor):
            logger.debug("laurent_coefficient %s: %d nodes per axis after %d doublings", target, count, step)
            return complex(value)
        previous = current
    raise NoConvergence(
        message="laurent_coefficient: torus quadrature did not settle",
        value=complex(base - scale * previous),
        err_estimate=float("nan"),
        refinements=spec.max_refine,
    )


def _term_sum_log(f: LaurentPolynomial, x: NDArray[np.float64]) -> float:
    exponents = f.exponent_matrix().astype(np.float64)
    logs = exponents @ x + np.log(np.abs(f.coefficient_array()))
    top = float(np.max(logs))
    return top + math.log(float(np.sum(np.exp(logs - top))))


def laurent_partial_sum(
    f: LaurentPolynomial,
    at: LogPoint,
    box: Sequence[tuple[int, int]],
    spec: QuadratureSpec | None = None,
    *,
    settings: LaurentSettings | None = None,
) -> complex:
    """Σ c_α z^α over α in the integer box, with coefficients taken on the fiber over ``at.x``."""

    if len(box) != f.nvars:
        raise ValueError(f"box has {len(box)} ranges, polynomial has {f.nvars} variables")
    total = 0j
    w = np.array(at.x) + 1j * np.array(at.theta)
    for alpha in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        coefficient = laurent_coefficient(f, alpha, at.x, spec, settings=settings)
        total += coefficient * complex(np.exp(np.dot(np.array(alpha, dtype=np.float64), w)))
    return total


def inverse_mellin_eval(
    mellin_fn: MellinFunction,
    sigma: Sequence[float],
    z: LogPoint,
    spec: QuadratureSpec | None = None,
    *,
    default_radius: float | None = None,
) -> complex:
    """(2π)^{−n} ∫_{ℝⁿ} M(σ+it) e^{−⟨σ+it, x+iθ⟩} dt, truncated and refined like mellin_eval.

    ``mellin_fn`` is evaluated on whole grids: it receives an array of
    shape (..., n) of complex points s.
    """

    n = len(sigma)
    _check_dim(n)
    if len(z.x) != n:
        raise ValueError(f"z has {len(z.x)} coordinates, sigma has {n}")
    spec = (spec or QuadratureSpec()).for_dim(n)
    if spec.radius is None:
        spec = spec.model_copy(update={"radius": (default_radius or DEFAULT_INVERSE_RADIUS,) * n})
    assert spec.radius is not None
    nodes = tuple(
        max(count, math.ceil(2 * radius / spec.max_step) + 1)
        for count, radius in zip(spec.nodes, spec.radius, strict=True)
    )
    spec = spec.model_copy(update={"nodes": nodes})

    sig = np.asarray(sigma, dtype=np.float64)
    w = np.asarray(z.x, dtype=np.float64) + 1j * np.asarray(z.theta, dtype=np.float64)
    norm = (2.0 * math.pi) ** (-n)

    def integrand(t: NDArray[np.float64]) -> NDArray[np.complex128]:
        s = sig + 1j * t
        return np.asarray(norm * mellin_fn(s) * np.exp(-(s @ w)), dtype=np.complex128)

    return integrate_adaptive(integrand, spec, label="inverse_mellin_eval").value
