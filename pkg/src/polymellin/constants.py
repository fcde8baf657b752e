from __future__ import annotations

TOOL_NAME = "polymellin"

# Geometry
MAX_HULL_DIM = 3

# Laurent evaluation
SAFE_LOG_MODULUS = 700.0
EXACT_DENOMINATOR_LIMIT = 10**6

# Quadrature
MAX_QUADRATURE_DIM = 3
DEFAULT_NODES = 64
MIN_NODES = 16
DEFAULT_TOL = 1e-9
DEFAULT_MAX_REFINE = 8
DEFAULT_MAX_STEP = 0.25
DEFAULT_WORKERS = 1
MAX_AUTO_RADIUS = 600.0
MIN_AUTO_RADIUS = 8.0
DEFAULT_INVERSE_RADIUS = 30.0
MAX_GRID_POINTS = 2**24
CHUNK_POINTS = 2**18

# Decay diagnostic
DEFAULT_RAY_COUNT = 32
DEFAULT_RAY_RADIUS = 40.0
DEFAULT_RAY_SAMPLES = 64
DEFAULT_RAY_SEED = 20240601

# Laurent coefficients
DEFAULT_TORUS_NODES = 32
NEAR_ZERO_RATIO = 1e-8

# Continuation
POLE_TOL = 1e-12
GAMMA_POLE_TOL = 1e-9
POLE_PERTURBATION = 1e-6
DEFAULT_AUTO_MARGIN = 0.0

# Special functions
HYP2F1_TERM_RTOL = 1e-15
HYP2F1_MAX_TERMS = 200_000
HYP2F1_DIRECT_RADIUS = 0.9
HYP2F1_INTEGER_TOL = 1e-9
SIMPLEX_MAX_DIM = 3
DEFAULT_TANH_SINH_LEVEL = 6
ROOT_SEPARATION_TOL = 1e-12

# Coamoeba
DEFAULT_GRID = 400
DEFAULT_COAMOEBA_RADIUS = 6.0
MAX_FIBER_DEGREE = 64
ZERO_WITNESS_RATIO = 1e-6
DEFAULT_EPSILON = 1e-3
DEFAULT_NEAR_ZERO = 1e-8
DEFAULT_SEARCH_RADIUS = 8.0
DEFAULT_SEARCH_GRID = 41
DEFAULT_REFINE_STARTS = 4

# GKZ
MAX_KERNEL_ENTRY = 4
