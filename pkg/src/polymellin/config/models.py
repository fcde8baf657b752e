from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from polymellin.constants import (
    DEFAULT_AUTO_MARGIN,
    DEFAULT_COAMOEBA_RADIUS,
    DEFAULT_EPSILON,
    DEFAULT_GRID,
    DEFAULT_MAX_REFINE,
    DEFAULT_MAX_STEP,
    DEFAULT_NEAR_ZERO,
    DEFAULT_NODES,
    DEFAULT_RAY_COUNT,
    DEFAULT_RAY_RADIUS,
    DEFAULT_RAY_SAMPLES,
    DEFAULT_RAY_SEED,
    DEFAULT_REFINE_STARTS,
    DEFAULT_SEARCH_GRID,
    DEFAULT_SEARCH_RADIUS,
    DEFAULT_TOL,
    DEFAULT_TORUS_NODES,
    DEFAULT_WORKERS,
    GAMMA_POLE_TOL,
    MAX_FIBER_DEGREE,
    MAX_KERNEL_ENTRY,
    MIN_NODES,
    NEAR_ZERO_RATIO,
    POLE_PERTURBATION,
    POLE_TOL,
)


def _as_tuple(value: Any) -> Any:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (value,)
    return value


class QuadratureSpec(BaseModel):
    """Truncation box, node counts and refinement policy for exponentially decaying integrands.

    ``radius`` of None means the box is seeded from the decay estimate. One
    entry in ``radius``/``nodes`` is broadcast to every axis.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    radius: tuple[float, ...] | None = None
    nodes: tuple[int, ...] = (DEFAULT_NODES,)
    tol: float = Field(default=DEFAULT_TOL, gt=0)
    max_refine: int = Field(default=DEFAULT_MAX_REFINE, ge=0)
    max_step: float = Field(default=DEFAULT_MAX_STEP, gt=0)
    workers: int = Field(default=DEFAULT_WORKERS, ge=1)

    @field_validator("radius", mode="before")
    @classmethod
    def _radius_tuple(cls, value: Any) -> Any:
        return _as_tuple(value)

    @field_validator("nodes", mode="before")
    @classmethod
    def _nodes_tuple(cls, value: Any) -> Any:
        return _as_tuple(value)

    @field_validator("radius")
    @classmethod
    def _radius_positive(cls, value: tuple[float, ...] | None) -> tuple[float, ...] | None:
        if value is not None and (not value or any(entry <= 0 for entry in value)):
            raise ValueError("radius entries must be positive")
        return value

    @field_validator("nodes")
    @classmethod
    def _nodes_minimum(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value or any(entry < MIN_NODES for entry in value):
            raise ValueError(f"every axis needs at least {MIN_NODES} nodes")
        return value

    def for_dim(self, n: int) -> QuadratureSpec:
        def broadcast(values: tuple[Any, ...], name: str) -> tuple[Any, ...]:
            if len(values) == n:
                return values
            if len(values) == 1:
                return values * n
            raise ValueError(f"{name} has {len(values)} entries for a {n}-dimensional integral")

        radius = broadcast(self.radius, "radius") if self.radius is not None else None
        return self.model_copy(update={"radius": radius, "nodes": broadcast(self.nodes, "nodes")})

    def refined(self, step: int) -> QuadratureSpec:
        """Refinement ``step`` (1-based): odd steps halve the node spacing, even steps double the box."""

        nodes = tuple(2 * count - 1 for count in self.nodes)
        if step % 2 == 1 or self.radius is None:
            return self.model_copy(update={"nodes": nodes})
        return self.model_copy(update={"nodes": nodes, "radius": tuple(2 * r for r in self.radius)})


class DecaySettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ray_count: int = Field(default=DEFAULT_RAY_COUNT, ge=1)
    ray_radius: float = Field(default=DEFAULT_RAY_RADIUS, gt=0)
    samples: int = Field(default=DEFAULT_RAY_SAMPLES, ge=8)
    seed: int = DEFAULT_RAY_SEED


class LaurentSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    torus_nodes: int = Field(default=DEFAULT_TORUS_NODES, ge=MIN_NODES)
    near_zero_ratio: float = Field(default=NEAR_ZERO_RATIO, gt=0)


class ContinuationSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pole_tol: float = Field(default=POLE_TOL, gt=0)
    gamma_pole_tol: float = Field(default=GAMMA_POLE_TOL, gt=0)
    perturbation: float = Field(default=POLE_PERTURBATION, gt=0)
    auto_margin: float = Field(default=DEFAULT_AUTO_MARGIN, ge=0)


class CoamoebaSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid: int = Field(default=DEFAULT_GRID, ge=4)
    radius: float = Field(default=DEFAULT_COAMOEBA_RADIUS, gt=0)
    max_degree: int = Field(default=MAX_FIBER_DEGREE, ge=1)


class NonvanishingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    radius: float = Field(default=DEFAULT_SEARCH_RADIUS, gt=0)
    grid: int = Field(default=DEFAULT_SEARCH_GRID, ge=3)
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0)
    near_zero: float = Field(default=DEFAULT_NEAR_ZERO, gt=0)
    refine_starts: int = Field(default=DEFAULT_REFINE_STARTS, ge=0)


class GkzSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_kernel_entry: int = Field(default=MAX_KERNEL_ENTRY, ge=1)


class ToolConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    decay: DecaySettings = Field(default_factory=DecaySettings)
    laurent: LaurentSettings = Field(default_factory=LaurentSettings)
    continuation: ContinuationSettings = Field(default_factory=ContinuationSettings)
    coamoeba: CoamoebaSettings = Field(default_factory=CoamoebaSettings)
    nonvanishing: NonvanishingSettings = Field(default_factory=NonvanishingSettings)
    gkz: GkzSettings = Field(default_factory=GkzSettings)


class ResolvedConfig(BaseModel):
    source: str
    path: Path | None = None
    data: ToolConfig
