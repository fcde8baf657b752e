from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from sympy import Matrix, Rational

from polymellin.errors import DegeneratePolytope, InputFormatError
from polymellin.geometry.polytope import (
    Facet,
    ShiftedPolytope,
    affine_rank,
    delta_contains,
    enumerate_faces,
    facet_representation,
    minkowski_sum,
)

FOUR_TERM = [(0, 0), (0, 1), (2, 0), (1, 2)]
UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
SIMPLEX = [(0, 0), (1, 0), (0, 1)]


def test_four_term_facets_are_exact_and_ordered() -> None:
    polytope = facet_representation(FOUR_TERM)

    assert polytope.facets == (
        Facet(mu=(1, 0), nu=0),
        Facet(mu=(1, -1), nu=-1),
        Facet(mu=(0, 1), nu=0),
        Facet(mu=(-2, -1), nu=-4),
    )
    assert set(polytope.vertices) == set(FOUR_TERM)


def test_simplex_facets() -> None:
    polytope = facet_representation(SIMPLEX)

    assert polytope.normals == ((1, 0), (0, 1), (-1, -1))
    assert polytope.offsets == (0, 0, -1)


def test_interval_facets() -> None:
    polytope = facet_representation([(0,), (3,), (1,)])

    assert polytope.facets == (Facet(mu=(1,), nu=0), Facet(mu=(-1,), nu=-3))
    assert polytope.vertices == ((0,), (3,))


def test_square_drops_nothing_and_has_four_facets() -> None:
    polytope = facet_representation(UNIT_SQUARE)

    assert polytope.normals == ((1, 0), (0, 1), (0, -1), (-1, 0))
    assert polytope.offsets == (0, 0, -1, -1)
    assert len(polytope.vertices) == 4


def test_interior_points_are_not_vertices() -> None:
    polytope = facet_representation([(0, 0), (2, 0), (0, 2), (1, 0), (1, 1)])

    assert set(polytope.vertices) == {(0, 0), (2, 0), (0, 2)}


@pytest.mark.parametrize(
    "points",
    [
        [(0, 0), (1, 1), (2, 2)],
        [(3, 4)],
    ],
)
def test_lower_dimensional_support_is_degenerate(points: list[tuple[int, int]]) -> None:
    with pytest.raises(DegeneratePolytope):
        facet_representation(points)


def test_ragged_exponents_are_rejected() -> None:
    with pytest.raises(InputFormatError):
        facet_representation([(0, 0), (1,)])


def test_affine_rank() -> None:
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_rank(SIMPLEX) == 2


def test_square_faces_by_dimension() -> None:
    polytope = facet_representation(UNIT_SQUARE)
    faces = enumerate_faces(polytope, UNIT_SQUARE)

    assert [face.dim for face in faces] == [2, 1, 1, 1, 1, 0, 0, 0, 0]
    assert faces[0].facet_indices == ()
    assert set(faces[0].support) == set(UNIT_SQUARE)
    assert all(len(face.support) == 2 for face in faces[1:5])
    assert all(face.is_vertex for face in faces[5:])


def test_four_term_edge_support() -> None:
    polytope = facet_representation(FOUR_TERM)
    faces = enumerate_faces(polytope, FOUR_TERM)
    edge = next(face for face in faces if face.facet_indices == (3,))

    assert edge.dim == 1
    assert edge.support == ((1, 2), (2, 0))


def test_faces_collect_non_vertex_support() -> None:
    points = [(0, 0), (2, 0), (1, 0), (0, 1)]
    polytope = facet_representation(points)
    bottom = next(face for face in enumerate_faces(polytope, points) if face.facet_indices == (1,))

    assert bottom.support == ((0, 0), (1, 0), (2, 0))


def test_delta_contains_shifted_four_term_polytope() -> None:
    polytope = facet_representation(FOUR_TERM)
    gamma = tuple(facet.nu - (1 if index == 0 else 0) for index, facet in enumerate(polytope.facets))

    assert gamma == (-1, -1, 0, -4)
    assert delta_contains(polytope, gamma, (-0.5, 0.3), strict=True)
    assert not delta_contains(polytope, polytope.offsets, (-0.5, 0.3), strict=True)


def test_delta_contains_boundary_is_not_strict() -> None:
    polytope = facet_representation(SIMPLEX)

    assert delta_contains(polytope, polytope.offsets, (0, Fraction(1, 2)))
    assert not delta_contains(polytope, polytope.offsets, (0, Fraction(1, 2)), strict=True)


def test_shifted_polytope_vertices_and_interior() -> None:
    polytope = facet_representation(SIMPLEX)
    region = ShiftedPolytope.of(polytope, (0, 0, -2))

    assert set(region.vertices()) == {(0, 0), (2, 0), (0, 2)}
    assert region.has_interior()
    point = region.interior_point()
    assert point is not None
    assert region.contains(point, strict=True)


def test_empty_shift_has_no_interior() -> None:
    polytope = facet_representation(SIMPLEX)
    region = ShiftedPolytope.of(polytope, (0, 0, 0))

    assert not region.has_interior()
    assert region.interior_point() is None


def test_minkowski_sum_of_simplices() -> None:
    simplex = facet_representation(SIMPLEX)
    doubled = minkowski_sum(simplex, simplex)

    assert doubled.normals == simplex.normals
    assert doubled.offsets == (0, 0, -2)


def test_minkowski_sum_of_intervals() -> None:
    left = facet_representation([(0,), (1,)])
    right = facet_representation([(0,), (2,)])

    assert minkowski_sum(left, right).facets == (Facet(mu=(1,), nu=0), Facet(mu=(-1,), nu=-3))


def _random_support(seed: int, dim: int, count: int) -> list[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    while True:
        points = sorted({tuple(int(v) for v in row) for row in rng.integers(0, 5, size=(count, dim))})
        if affine_rank(points) == dim:
            return points


def _in_hull(vertices: tuple[tuple[int, ...], ...], point: tuple[Fraction, ...]) -> bool:
    """Barycentric membership in some simplex spanned by the vertices."""

    n = len(point)
    rhs = Matrix([*(Rational(value.numerator, value.denominator) for value in point), 1])
    for combo in itertools.combinations(vertices, n + 1):
        matrix = Matrix([[vertex[axis] for vertex in combo] for axis in range(n)] + [[1] * (n + 1)])
        if matrix.det() == 0:
            continue
        if all(weight >= 0 for weight in matrix.LUsolve(rhs)):
            return True
    return False


@pytest.mark.parametrize(("seed", "dim"), [(1, 2), (7, 2), (13, 2), (5, 3)])
def test_delta_contains_matches_convex_hull_membership(seed: int, dim: int) -> None:
    polytope = facet_representation(_random_support(seed, dim, 7))
    rng = np.random.default_rng(seed + 100)

    for _ in range(40):
        point = tuple(Fraction(int(v), 7) for v in rng.integers(-7, 36, size=dim))
        assert delta_contains(polytope, polytope.offsets, point) == _in_hull(polytope.vertices, point)


@pytest.mark.parametrize(("seed", "dim"), [(2, 2), (17, 2), (23, 2), (4, 3)])
def test_face_lattice_partitions_the_support(seed: int, dim: int) -> None:
    support = _random_support(seed, dim, 9)
    polytope = facet_representation(support)
    faces = enumerate_faces(polytope, support)

    boundary = {point for point in support if any(facet.slack(point) == 0 for facet in polytope.facets)}
    on_facets = {point for face in faces if face.dim == dim - 1 for point in face.support}
    assert on_facets == boundary

    for point in support:
        tight = {index for index, facet in enumerate(polytope.facets) if facet.slack(point) == 0}
        carriers = [face for face in faces if set(face.facet_indices) == tight]
        assert len(carriers) == 1
        assert point in carriers[0].support
        assert (carriers[0].dim == 0) == (point in polytope.vertices)
