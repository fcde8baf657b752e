"""Exact lattice polytopes: Newton polytopes, their faces and the shifted polytopes Δ(γ).

Everything here works in integer/rational arithmetic. The hull is computed by
brute force over n-subsets of the support, which is plenty for the n ≤ 3,
few-dozen-point inputs this package is meant for.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TypeAlias

from sympy import Matrix

from polymellin.constants import MAX_HULL_DIM
from polymellin.errors import DegeneratePolytope, InputFormatError, UnsupportedDimension

ExponentVector: TypeAlias = tuple[int, ...]
RealVector: TypeAlias = Sequence[float] | Sequence[Fraction] | Sequence[int]


def dot(left: Sequence[int], right: Sequence[float | Fraction | int]) -> float | Fraction | int:
    return sum((a * b for a, b in zip(left, right, strict=True)), start=0)


@dataclass(frozen=True, slots=True)
class Facet:
    """Supporting halfspace ⟨mu, σ⟩ ≥ nu with a primitive inward normal."""

    mu: tuple[int, ...]
    nu: int

    def slack(self, point: Sequence[float | Fraction | int]) -> float | Fraction | int:
        return dot(self.mu, point) - self.nu


@dataclass(frozen=True, slots=True)
class NewtonPolytope:
    dim: int
    vertices: tuple[ExponentVector, ...]
    facets: tuple[Facet, ...]

    @property
    def normals(self) -> tuple[tuple[int, ...], ...]:
        return tuple(facet.mu for facet in self.facets)

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(facet.nu for facet in self.facets)

    def contains(self, point: Sequence[float | Fraction | int], *, strict: bool = False) -> bool:
        return delta_contains(self, self.offsets, point, strict=strict)


@dataclass(frozen=True, slots=True)
class Face:
    facet_indices: tuple[int, ...]
    dim: int
    support: tuple[ExponentVector, ...]
    vertices: tuple[ExponentVector, ...]

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True, slots=True)
class ShiftedPolytope:
    """Δ(γ) = {σ : ⟨μ_k, σ⟩ ≥ γ_k}, reusing the facet normals of a Newton polytope."""

    normals: tuple[tuple[int, ...], ...]
    gamma: tuple[int, ...]

    @classmethod
    def of(cls, polytope: NewtonPolytope, gamma: Sequence[int]) -> ShiftedPolytope:
        if len(gamma) != len(polytope.facets):
            raise ValueError(f"gamma has {len(gamma)} entries but the polytope has {len(polytope.facets)} facets")
        return cls(normals=polytope.normals, gamma=tuple(int(value) for value in gamma))

    @property
    def nvars(self) -> int:
        return len(self.normals[0])

    def contains(self, sigma: Sequence[float | Fraction | int], *, strict: bool = False) -> bool:
        for mu, bound in zip(self.normals, self.gamma, strict=True):
            value = dot(mu, sigma)
            if value < bound or (strict and value == bound):
                return False
        return True

    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        found: set[tuple[Fraction, ...]] = set()
        n = self.nvars
        for rows in combinations(range(len(self.normals)), n):
            matrix = Matrix([list(self.normals[row]) for row in rows])
            if matrix.det() == 0:
                continue
            rhs = Matrix([self.gamma[row] for row in rows])
            solution = matrix.LUsolve(rhs)
            point = tuple(Fraction(int(entry.p), int(entry.q)) for entry in solution)
            if self.contains(point):
                found.add(point)
        return tuple(sorted(found))

    def has_interior(self) -> bool:
        points = self.vertices()
        return len(points) > self.nvars and affine_rank(points) == self.nvars

    def interior_point(self) -> tuple[Fraction, ...] | None:
        """Vertex centroid, which is interior whenever the polytope is full-dimensional."""

        points = self.vertices()
        if len(points) <= self.nvars or affine_rank(points) < self.nvars:
            return None
        count = len(points)
        return tuple(sum((point[axis] for point in points), start=Fraction(0)) / count for axis in range(self.nvars))


def affine_rank(points: Sequence[Sequence[int | Fraction]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[value - origin for value, origin in zip(point, base, strict=True)] for point in points[1:]]
    return int(Matrix(rows).rank())


def _primitive(vector: Sequence[int]) -> tuple[int, ...]:
    divisor = math.gcd(*(abs(value) for value in vector))
    if divisor == 0:
        return tuple(vector)
    return tuple(value // divisor for value in vector)


def _hyperplane_normal(points: Sequence[ExponentVector]) -> tuple[int, ...]:
    """Integer normal of the affine hyperplane through n points (zero if they are dependent)."""

    n = len(points[0])
    if n == 1:
        return (1,)
    rows = Matrix([[a - b for a, b in zip(point, points[0], strict=True)] for point in points[1:]])
    normal: list[int] = []
    for column in range(n):
        minor = rows.copy()
        minor.col_del(column)
        normal.append(int((-1) ** column * minor.det()))
    return tuple(normal)


def _normalize_points(points: Iterable[Sequence[int]]) -> list[ExponentVector]:
    unique = sorted({tuple(int(value) for value in point) for point in points})
    if not unique:
        raise DegeneratePolytope("the support set is empty")
    lengths = {len(point) for point in unique}
    if len(lengths) != 1:
        raise InputFormatError(f"exponent vectors have mixed lengths: {sorted(lengths)}")
    if 0 in lengths:
        raise InputFormatError("exponent vectors must have at least one entry")
    return unique


def facet_representation(points: Iterable[Sequence[int]]) -> NewtonPolytope:
    """Return vertices and primitive inward facets of conv(points).

    Facets are ordered by descending lexicographic order of their normals,
    which puts the coordinate normals e_1, e_2, ... first.
    """

    support = _normalize_points(points)
    n = len(support[0])
    if n > MAX_HULL_DIM:
        raise UnsupportedDimension(f"hulls are computed for n ≤ {MAX_HULL_DIM}, got n={n}", module="lattice_geometry")
    rank = affine_rank(support)
    if rank < n:
        raise DegeneratePolytope(f"support spans an affine subspace of dimension {rank} < {n}")

    facets: set[Facet] = set()
    for combo in combinations(support, n):
        normal = _hyperplane_normal(combo)
        if not any(normal):
            continue
        normal = _primitive(normal)
        level = int(dot(normal, combo[0]))
        values = [int(dot(normal, point)) for point in support]
        if min(values) == level:
            facets.add(Facet(mu=normal, nu=level))
        if max(values) == level:
            facets.add(Facet(mu=tuple(-value for value in normal), nu=-level))

    ordered = tuple(sorted(facets, key=lambda facet: facet.mu, reverse=True))
    vertices = []
    for point in support:
        tight = [list(facet.mu) for facet in ordered if facet.slack(point) == 0]
        if len(tight) >= n and Matrix(tight).rank() == n:
            vertices.append(point)
    return NewtonPolytope(dim=n, vertices=tuple(vertices), facets=ordered)


def enumerate_faces(polytope: NewtonPolytope, support_set: Iterable[Sequence[int]]) -> list[Face]:
    """All nonempty faces, top face first, then by decreasing dimension."""

    support = _normalize_points(support_set)
    facet_vertices = [
        frozenset(vertex for vertex in polytope.vertices if facet.slack(vertex) == 0) for facet in polytope.facets
    ]
    top = frozenset(polytope.vertices)
    found = {top}
    frontier = [top]
    while frontier:
        current = frontier.pop()
        for members in facet_vertices:
            shared = current & members
            if shared and shared not in found:
                found.add(shared)
                frontier.append(shared)

    faces: list[Face] = []
    for members in found:
        if members == top:
            indices: tuple[int, ...] = ()
        else:
            indices = tuple(index for index, vertices in enumerate(facet_vertices) if members <= vertices)
        on_face = tuple(
            point for point in support if all(polytope.facets[index].slack(point) == 0 for index in indices)
        )
        ordered_vertices = tuple(sorted(members))
        faces.append(
            Face(
                facet_indices=indices,
                dim=affine_rank(ordered_vertices),
                support=on_face,
                vertices=ordered_vertices,
            )
        )
    faces.sort(key=lambda face: (-face.dim, face.facet_indices))
    return faces


def delta_contains(
    polytope: NewtonPolytope,
    gamma: Sequence[int],
    sigma: Sequence[float | Fraction | int],
    *,
    strict: bool = False,
) -> bool:
    return ShiftedPolytope.of(polytope, gamma).contains(sigma, strict=strict)


def minkowski_sum(left: NewtonPolytope, right: NewtonPolytope) -> NewtonPolytope:
    if left.dim != right.dim:
        raise ValueError(f"ambient dimensions differ: {left.dim} vs {right.dim}")
    sums = {
        tuple(a + b for a, b in zip(first, second, strict=True)) for first in left.vertices for second in right.vertices
    }
    return facet_representation(sums)
