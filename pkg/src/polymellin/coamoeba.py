"""Coamoeba sampling, facial closure and the non-vanishing diagnostics for Arg⁻¹(θ).

The non-vanishing check is a heuristic search (grid plus Nelder–Mead), not a
certificate; its verdicts say so.
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from polymellin.algebra.laurent import LaurentPolynomial, evaluate_log_grid, term_modulus_log, truncate_to_face
from polymellin.config.models import CoamoebaSettings, NonvanishingSettings
from polymellin.errors import Unsupported
from polymellin.geometry.polytope import Face, enumerate_faces, facet_representation

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def canonical_angles(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Representatives in [−π, π)."""

    return np.mod(np.asarray(values, dtype=np.float64) + math.pi, TWO_PI) - math.pi


@dataclass(frozen=True, slots=True)
class ArgDirection:
    """A fiber direction θ, stored as its canonical representative in [−π, π)ⁿ plus the 2π lift.

    ``raw`` = theta + 2π·lift reproduces the value the caller passed in; the
    directional Mellin integral depends on the lift through e^{2πi⟨lift, s⟩}.
    """

    theta: tuple[float, ...]
    lift: tuple[int, ...]

    @classmethod
    def of(cls, theta: Sequence[float]) -> ArgDirection:
        canonical: list[float] = []
        lifts: list[int] = []
        for value in theta:
            lift = math.floor((float(value) + math.pi) / TWO_PI)
            angle = float(value) - TWO_PI * lift
            if angle >= math.pi:
                angle -= TWO_PI
                lift += 1
            canonical.append(angle)
            lifts.append(lift)
        return cls(theta=tuple(canonical), lift=tuple(lifts))

    @property
    def dim(self) -> int:
        return len(self.theta)

    @property
    def raw(self) -> tuple[float, ...]:
        return tuple(angle + TWO_PI * lift for angle, lift in zip(self.theta, self.lift, strict=True))


@dataclass(frozen=True)
class CoamoebaCloud:
    """Sampled argument points with the face that produced each and the log-modulus witness."""

    nvars: int
    points: NDArray[np.float64]
    face_ids: NDArray[np.int64]
    witnesses: NDArray[np.float64]

    @classmethod
    def empty(cls, nvars: int) -> CoamoebaCloud:
        return cls(
            nvars=nvars,
            points=np.zeros((0, nvars)),
            face_ids=np.zeros(0, dtype=np.int64),
            witnesses=np.zeros((0, nvars)),
        )

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def union(self, other: CoamoebaCloud) -> CoamoebaCloud:
        return CoamoebaCloud(
            nvars=self.nvars,
            points=np.concatenate([self.points, other.points]),
            face_ids=np.concatenate([self.face_ids, other.face_ids]),
            witnesses=np.concatenate([self.witnesses, other.witnesses]),
        )

    def sorted(self) -> CoamoebaCloud:
        keys = [self.face_ids] + [self.points[:, axis] for axis in reversed(range(self.nvars))]
        order = np.lexsort(keys)
        return CoamoebaCloud(
            nvars=self.nvars,
            points=self.points[order],
            face_ids=self.face_ids[order],
            witnesses=self.witnesses[order],
        )


def companion_roots(coefficients: NDArray[np.complex128], *, lead_tol: float = 1e-12) -> NDArray[np.complex128]:
    """Roots of a batch of polynomials given highest degree first, shape (batch, d+1) → (batch, d).

    Rows whose leading coefficient is negligible against the row's scale
    lose a root at infinity; their roots come back as NaN.
    """

    batch, width = coefficients.shape
    degree = width - 1
    if degree == 0:
        return np.zeros((batch, 0), dtype=np.complex128)
    lead = coefficients[:, 0]
    scale = np.max(np.abs(coefficients), axis=1)
    degenerate = np.abs(lead) <= lead_tol * scale
    safe_lead = np.where(degenerate, 1.0, lead)

    companion = np.zeros((batch, degree, degree), dtype=np.complex128)
    companion[:, 0, :] = -coefficients[:, 1:] / safe_lead[:, None]
    if degree > 1:
        companion[:, 1:, :-1] = np.eye(degree - 1)
    roots = np.linalg.eigvals(companion)
    roots[degenerate] = np.nan
    return roots


def _univariate_coefficients(p: LaurentPolynomial, axis: int) -> tuple[int, int]:
    powers = [exponent[axis] for exponent in p.support]
    return min(powers), max(powers)


def _sample_one_variable(p: LaurentPolynomial, face_id: int, max_degree: int) -> CoamoebaCloud:
    low, high = _univariate_coefficients(p, 0)
    degree = high - low
    if degree == 0:
        return CoamoebaCloud.empty(1)
    if degree > max_degree:
        raise Unsupported(f"degree {degree} exceeds the root-finding cap {max_degree}", module="coamoeba")
    row = np.zeros((1, degree + 1), dtype=np.complex128)
    for exponent, value in p.to_complex().terms:
        row[0, high - exponent[0]] += complex(value)
    roots = companion_roots(row)[0]
    roots = roots[np.isfinite(roots) & (np.abs(roots) > 0)]
    return CoamoebaCloud(
        nvars=1,
        points=canonical_angles(np.angle(roots))[:, None],
        face_ids=np.full(len(roots), face_id, dtype=np.int64),
        witnesses=np.log(np.abs(roots))[:, None],
    )


def _sample_fibers(
    p: LaurentPolynomial,
    *,
    solve_axis: int,
    face_id: int,
    grid: int,
    radius: float,
    max_degree: int,
) -> CoamoebaCloud:
    free_axis = 1 - solve_axis
    low, high = _univariate_coefficients(p, solve_axis)
    degree = high - low
    if degree > max_degree:
        raise Unsupported(f"fiber degree {degree} exceeds the root-finding cap {max_degree}", module="coamoeba")

    xs = np.linspace(-radius, radius, grid)
    thetas = -math.pi + TWO_PI * np.arange(grid) / grid
    free_x, free_theta = (array.ravel() for array in np.meshgrid(xs, thetas, indexing="ij"))
    free_w = free_x + 1j * free_theta

    columns = np.zeros((free_w.size, degree + 1), dtype=np.complex128)
    for exponent, value in p.to_complex().terms:
        columns[:, high - exponent[solve_axis]] += complex(value) * np.exp(exponent[free_axis] * free_w)
    roots = companion_roots(columns)
    valid = np.isfinite(roots) & (np.abs(np.nan_to_num(roots)) > 0)

    solved_theta = canonical_angles(np.angle(roots[valid]))
    solved_x = np.log(np.abs(roots[valid]))
    free_theta_rep = canonical_angles(np.broadcast_to(free_theta[:, None], roots.shape)[valid])
    free_x_rep = np.broadcast_to(free_x[:, None], roots.shape)[valid]

    points = np.empty((solved_theta.size, 2))
    witnesses = np.empty((solved_theta.size, 2))
    points[:, free_axis], points[:, solve_axis] = free_theta_rep, solved_theta
    witnesses[:, free_axis], witnesses[:, solve_axis] = free_x_rep, solved_x
    return CoamoebaCloud(
        nvars=2,
        points=points,
        face_ids=np.full(solved_theta.size, face_id, dtype=np.int64),
        witnesses=witnesses,
    )


def coamoeba_sample(
    f: LaurentPolynomial,
    grid: int | None = None,
    *,
    settings: CoamoebaSettings | None = None,
    face_id: int = 0,
) -> CoamoebaCloud:
    """Sample Arg(Z_f).

    n = 1: the arguments of the roots. n = 2: for every (x₁, θ₁) grid cell
    the roots in z₂ of f(e^{x₁+iθ₁}, z₂); when f does not involve z₂ the
    roles of the variables are swapped.
    """

    config = settings or CoamoebaSettings()
    resolution = grid if grid is not None else config.grid
    if f.nvars > 2:
        raise Unsupported(f"coamoeba sampling covers n ≤ 2, got n={f.nvars}", module="coamoeba")
    if len(f) < 2:
        return CoamoebaCloud.empty(f.nvars)
    if f.nvars == 1:
        return _sample_one_variable(f, face_id, config.max_degree)

    low, high = _univariate_coefficients(f, 1)
    solve_axis = 1 if high > low else 0
    cloud = _sample_fibers(
        f,
        solve_axis=solve_axis,
        face_id=face_id,
        grid=resolution,
        radius=config.radius,
        max_degree=config.max_degree,
    )
    logger.debug("coamoeba_sample: %d points for face %d on a %d grid", len(cloud), face_id, resolution)
    return cloud


def witness_ratios(f: LaurentPolynomial, cloud: CoamoebaCloud) -> NDArray[np.float64]:
    """|f(e^{x+iθ})| / Σ|a_α|e^{⟨α,x⟩} at each cloud point and its witness x."""

    if cloud.is_empty:
        return np.zeros(0)
    mantissa, shift = evaluate_log_grid(f, cloud.witnesses, cloud.points)
    return np.asarray(np.abs(mantissa) * np.exp(shift - term_modulus_log(f, cloud.witnesses)))


def closure_union_faces(
    f: LaurentPolynomial,
    grid: int | None = None,
    *,
    settings: CoamoebaSettings | None = None,
) -> CoamoebaCloud:
    """Union of the coamoebas of f_Γ over all faces with at least two monomials.

    Face ids index the list returned by ``enumerate_faces`` (top face is 0).
    """

    if f.nvars > 2:
        raise Unsupported(f"coamoeba sampling covers n ≤ 2, got n={f.nvars}", module="coamoeba")
    if len(f) < 2:
        return CoamoebaCloud.empty(f.nvars)
    faces = enumerate_faces(facet_representation(f.support), f.support)
    cloud = CoamoebaCloud.empty(f.nvars)
    for index, face in enumerate(faces):
        if len(face.support) < 2:
            continue
        cloud = cloud.union(coamoeba_sample(truncate_to_face(f, face), grid, settings=settings, face_id=index))
    return cloud


class Verdict(StrEnum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(slots=True)
class FaceVerdict:
    face_index: int
    facet_indices: tuple[int, ...]
    dim: int
    support: tuple[tuple[int, ...], ...]
    verdict: Verdict
    min_ratio: float
    witness: tuple[float, ...] | None = None


@dataclass(slots=True)
class NonvanishingReport:
    theta: tuple[float, ...]
    epsilon: float
    faces: list[FaceVerdict] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        verdicts = {face.verdict for face in self.faces}
        if Verdict.FAIL in verdicts:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def _ratio_function(
    p: LaurentPolynomial, theta: NDArray[np.float64]
) -> Callable[[NDArray[np.float64]], NDArray[np.float64]]:
    def ratio(x: NDArray[np.float64]) -> NDArray[np.float64]:
        mantissa, shift = evaluate_log_grid(p, x, theta)
        return np.asarray(np.abs(mantissa) * np.exp(shift - term_modulus_log(p, x)))

    return ratio


def _search_face(
    p: LaurentPolynomial,
    theta: NDArray[np.float64],
    config: NonvanishingSettings,
) -> tuple[float, NDArray[np.float64]]:
    n = p.nvars
    ratio = _ratio_function(p, theta)
    axis = np.linspace(-config.radius, config.radius, config.grid)
    grid = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    values = ratio(grid)
    order = np.argsort(values, kind="stable")
    best_value = float(values[order[0]])
    best_x = grid[order[0]]

    bounds = [(-config.radius, config.radius)] * n
    for start in grid[order[: config.refine_starts]]:
        result = minimize(
            lambda x: float(ratio(np.asarray(x)[None, :])[0]),
            start,
            method="Nelder-Mead",
            bounds=bounds,
            options={"xatol": 1e-10, "fatol": 1e-16, "maxiter": 2000},
        )
        if float(result.fun) < best_value:
            best_value = float(result.fun)
            best_x = np.asarray(result.x)
    return best_value, best_x


def _face_verdict(
    index: int,
    face: Face,
    p: LaurentPolynomial,
    theta: NDArray[np.float64],
    config: NonvanishingSettings,
) -> FaceVerdict:
    if len(face.support) < 2:
        return FaceVerdict(index, face.facet_indices, face.dim, face.support, Verdict.PASS, 1.0)
    value, x = _search_face(p, theta, config)
    if value > config.epsilon:
        verdict, witness = Verdict.PASS, None
    elif value < config.near_zero:
        verdict, witness = Verdict.FAIL, tuple(float(entry) for entry in x)
    else:
        verdict, witness = Verdict.INCONCLUSIVE, tuple(float(entry) for entry in x)
    return FaceVerdict(index, face.facet_indices, face.dim, face.support, verdict, value, witness)


def completely_nonvanishing_check(
    f: LaurentPolynomial,
    theta: ArgDirection | Sequence[float],
    settings: NonvanishingSettings | None = None,
) -> NonvanishingReport:
    """Heuristically test that no truncation f_Γ vanishes on Arg⁻¹(θ).

    For every face, the scale-invariant ratio |f_Γ| / Σ|a_α|e^{⟨α,x⟩} is
    minimized over the box [−R, R]ⁿ. PASS means the minimum stayed above
    ε, FAIL means a near-zero was found (its x is the witness), and
    INCONCLUSIVE covers everything in between. This is not a certificate.
    """

    config = settings or NonvanishingSettings()
    direction = theta if isinstance(theta, ArgDirection) else ArgDirection.of(theta)
    if direction.dim != f.nvars:
        raise ValueError(f"theta has {direction.dim} entries, polynomial has {f.nvars} variables")
    angles = np.array(direction.theta)
    faces = enumerate_faces(facet_representation(f.support), f.support)
    report = NonvanishingReport(theta=direction.theta, epsilon=config.epsilon)
    for index, face in enumerate(faces):
        report.faces.append(_face_verdict(index, face, truncate_to_face(f, face), angles, config))
    logger.info("non-vanishing check at theta=%s: %s", direction.theta, report.verdict)
    return report


def theta_clearance(theta: ArgDirection | Sequence[float], cloud: CoamoebaCloud) -> float:
    """Smallest torus distance from θ to the cloud (per-coordinate wraparound, Euclidean combine)."""

    if cloud.is_empty:
        return math.inf
    direction = theta if isinstance(theta, ArgDirection) else ArgDirection.of(theta)
    delta = canonical_angles(cloud.points - np.array(direction.theta))
    return float(np.min(np.linalg.norm(delta, axis=1)))


def write_cloud_csv(cloud: CoamoebaCloud, path: Path) -> Path:
    """Write theta_1,...,theta_n,face_id rows in sorted order."""

    target = path.expanduser()
    target.parent.mkdir(parents=True, exist_ok=True)
    ordered = cloud.sorted()
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"theta_{axis + 1}" for axis in range(cloud.nvars)] + ["face_id"])
        for point, face_id in zip(ordered.points, ordered.face_ids, strict=True):
            writer.writerow([f"{value:.15g}" for value in point] + [int(face_id)])
    return target.resolve()
