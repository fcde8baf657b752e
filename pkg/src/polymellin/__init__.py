from polymellin.algebra.laurent import LaurentPolynomial, LogPoint
from polymellin.coamoeba import (
    ArgDirection,
    CoamoebaCloud,
    closure_union_faces,
    coamoeba_sample,
    completely_nonvanishing_check,
    theta_clearance,
)
from polymellin.config.models import QuadratureSpec, ToolConfig
from polymellin.errors import PolyMellinError
from polymellin.geometry.polytope import NewtonPolytope, facet_representation
from polymellin.gkz import a_matrix_kernel, box_residual, euler_residual
from polymellin.mellin.continuation import continue_to_m, continued_mellin_eval, phi_eval
from polymellin.mellin.transform import (
    TubePoint,
    convergence_domain,
    inverse_mellin_eval,
    laurent_coefficient,
    mellin_eval,
)
from polymellin.models.polynomial import dump_polynomial, load_polynomial

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ArgDirection",
    "CoamoebaCloud",
    "LaurentPolynomial",
    "LogPoint",
    "NewtonPolytope",
    "PolyMellinError",
    "QuadratureSpec",
    "ToolConfig",
    "TubePoint",
    "a_matrix_kernel",
    "box_residual",
    "closure_union_faces",
    "coamoeba_sample",
    "completely_nonvanishing_check",
    "continue_to_m",
    "continued_mellin_eval",
    "convergence_domain",
    "dump_polynomial",
    "euler_residual",
    "facet_representation",
    "inverse_mellin_eval",
    "laurent_coefficient",
    "load_polynomial",
    "mellin_eval",
    "phi_eval",
    "theta_clearance",
]
