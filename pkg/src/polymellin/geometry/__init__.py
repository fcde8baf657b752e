from polymellin.geometry.polytope import (
    Face,
    Facet,
    NewtonPolytope,
    ShiftedPolytope,
    delta_contains,
    enumerate_faces,
    facet_representation,
    minkowski_sum,
)

__all__ = [
    "Face",
    "Facet",
    "NewtonPolytope",
    "ShiftedPolytope",
    "delta_contains",
    "enumerate_faces",
    "facet_representation",
    "minkowski_sum",
]
