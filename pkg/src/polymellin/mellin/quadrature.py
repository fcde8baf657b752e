"""Quadrature rules for smooth, exponentially decaying integrands.

The workhorse is a tensor-product trapezoid rule on a box [−R, R]ⁿ, refined
by alternately halving the node spacing and doubling the box. Grids are
evaluated in row chunks, optionally on a thread pool; each row is reduced on
its own and the row sums are combined once in row order, so the result does
not depend on how the rows were partitioned.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from polymellin.config.models import QuadratureSpec
from polymellin.constants import CHUNK_POINTS, DEFAULT_TANH_SINH_LEVEL, MAX_GRID_POINTS, MAX_QUADRATURE_DIM
from polymellin.errors import NoConvergence, UnsupportedDimension

logger = logging.getLogger(__name__)

GridIntegrand = Callable[[NDArray[np.float64]], NDArray[np.complex128]]

_TANH_SINH_T_MAX = 6.0


@dataclass(frozen=True, slots=True)
class QuadratureResult:
    value: complex
    err_estimate: float
    spec: QuadratureSpec
    refinements: int


def trapezoid_axis(radius: float, nodes: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    points = np.linspace(-radius, radius, nodes)
    step = 2.0 * radius / (nodes - 1)
    weights = np.full(nodes, step)
    weights[0] = weights[-1] = 0.5 * step
    return points, weights


def grid_size(spec: QuadratureSpec) -> int:
    return math.prod(spec.nodes)


def _row_sums(
    integrand: GridIntegrand,
    rows: NDArray[np.float64],
    tail_points: NDArray[np.float64],
    tail_weights: NDArray[np.float64],
) -> list[complex]:
    """Weighted sums of the integrand over each slab x₀ = rows[i]."""

    count = rows.shape[0]
    tail_shape = tail_points.shape[:-1]
    lead = np.broadcast_to(rows.reshape((count,) + (1,) * (len(tail_shape) + 1)), (count, *tail_shape, 1))
    tail = np.broadcast_to(tail_points, (count, *tail_points.shape))
    values = integrand(np.concatenate([lead, tail], axis=-1)) * tail_weights
    return [complex(np.sum(values[index])) for index in range(count)]


def tensor_trapezoid(integrand: GridIntegrand, spec: QuadratureSpec) -> complex:
    """Σ w·F over the tensor grid described by ``spec`` (radius must be resolved)."""

    if spec.radius is None:
        raise ValueError("tensor_trapezoid needs an explicit radius")
    n = len(spec.nodes)
    if n > MAX_QUADRATURE_DIM:
        raise UnsupportedDimension(f"quadrature is limited to n ≤ {MAX_QUADRATURE_DIM}, got n={n}")

    axes = [trapezoid_axis(radius, nodes) for radius, nodes in zip(spec.radius, spec.nodes, strict=True)]
    lead_points, lead_weights = axes[0]
    if n == 1:
        tail_points = np.zeros((1, 0))
        tail_weights = np.ones(1)
    else:
        mesh = np.meshgrid(*(points for points, _ in axes[1:]), indexing="ij")
        tail_points = np.stack(mesh, axis=-1)
        tail_weights = np.ones(())
        for _, weights in axes[1:]:
            tail_weights = np.multiply.outer(tail_weights, weights)

    tail_size = max(1, int(np.prod(tail_points.shape[:-1])))
    rows_per_chunk = max(1, CHUNK_POINTS // tail_size)
    chunks = [lead_points[start : start + rows_per_chunk] for start in range(0, len(lead_points), rows_per_chunk)]

    def work(rows: NDArray[np.float64]) -> list[complex]:
        return _row_sums(integrand, rows, tail_points, tail_weights)

    if spec.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(rows) for rows in chunks]

    row_sums = np.array([value for part in parts for value in part], dtype=np.complex128)
    return complex(np.sum(row_sums * lead_weights))


def integrate_adaptive(integrand: GridIntegrand, spec: QuadratureSpec, *, label: str = "integral") -> QuadratureResult:
    """Refine until successive estimates differ by at most tol·|value|.

    A box-doubling step only measures truncation, so it may end the loop
    only when the spacing-halving step before it was also within tolerance.
    Raises NoConvergence once ``max_refine`` refinements are spent or the
    next grid would exceed the point budget.
    """

    current = spec
    value = tensor_trapezoid(integrand, current)
    err = math.inf
    previous_ok = False
    for step in range(1, spec.max_refine + 1):
        candidate = current.refined(step)
        if grid_size(candidate) > MAX_GRID_POINTS:
            raise NoConvergence(
                message=f"{label}: next refinement needs {grid_size(candidate)} points",
                value=value,
                err_estimate=err,
                refinements=step - 1,
            )
        refined = tensor_trapezoid(integrand, candidate)
        err = abs(refined - value)
        logger.debug(
            "%s: refinement %d nodes=%s radius=%s diff=%.3e", label, step, candidate.nodes, candidate.radius, err
        )
        current, value = candidate, refined
        within = err <= spec.tol * abs(value)
        if within and (step % 2 == 1 or previous_ok):
            return QuadratureResult(value=value, err_estimate=err, spec=current, refinements=step)
        previous_ok = within

    raise NoConvergence(
        message=f"{label}: tolerance {spec.tol:g} not met",
        value=value,
        err_estimate=err,
        refinements=spec.max_refine,
    )


def periodic_nodes(count: int) -> tuple[NDArray[np.float64], float]:
    """Equispaced nodes on [−π, π) and the common weight 2π/count."""

    return -math.pi + 2.0 * math.pi * np.arange(count) / count, 2.0 * math.pi / count


def tanh_sinh_unit(
    level: int = DEFAULT_TANH_SINH_LEVEL,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Tanh-sinh rule on [0, 1]: nodes u, complements 1 − u and weights.

    Complements are computed directly, not as 1 − u, so integrands with
    algebraic singularities at either endpoint keep full relative accuracy.
    The step in the auxiliary variable is 2^{3−level}.
    """

    step = 2.0 ** (3 - level)
    count = int(math.ceil(_TANH_SINH_T_MAX / step))
    t = step * np.arange(-count, count + 1)
    arg = math.pi * np.sinh(t)
    nodes = 1.0 / (1.0 + np.exp(-arg))
    complements = 1.0 / (1.0 + np.exp(arg))
    weights = step * math.pi * np.cosh(t) * nodes * complements
    return nodes, complements, weights
