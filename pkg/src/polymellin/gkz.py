"""A-hypergeometric residual checks on the Mellin transform, viewed as a function of the coefficients.

With f = Σ a_k z^{α_k}, derivatives in a are themselves Mellin-type
integrals: ∂^c(1/f) = (−1)^{|c|}|c|!·z^{⟨c,α⟩}/f^{1+|c|}. Both the box
operators □_b = ∂^{b⁺} − ∂^{b⁻} and the Euler operators are evaluated
through ``mellin_eval`` on those integrands, never by finite differences.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from polymellin.algebra.integer import integer_kernel
from polymellin.algebra.laurent import LaurentPolynomial
from polymellin.coamoeba import ArgDirection
from polymellin.config.models import DecaySettings, GkzSettings, QuadratureSpec
from polymellin.errors import DomainError, InvariantViolation, OnDiscriminant
from polymellin.mellin.transform import MellinValue, TubePoint, mellin_eval
from polymellin.special.oracles import example3_coefficients, example3_discriminant

logger = logging.getLogger(__name__)

_DISCRIMINANT_RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class AMatrix:
    """Columns (1, α_k) in the polynomial's term order."""

    columns: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, f: LaurentPolynomial) -> AMatrix:
        return cls(columns=tuple((1, *exponent) for exponent in f.support))

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(column[1:] for column in self.columns)

    def rows(self) -> list[list[int]]:
        height = len(self.columns[0]) if self.columns else 0
        return [[column[row] for column in self.columns] for row in range(height)]


@dataclass(frozen=True, slots=True)
class KernelVector:
    b: tuple[int, ...]

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(max(value, 0) for value in self.b)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(max(-value, 0) for value in self.b)

    @property
    def order(self) -> int:
        return sum(self.plus)

    @property
    def max_entry(self) -> int:
        return max((abs(value) for value in self.b), default=0)

    def exponent(self, side: Sequence[int], matrix: AMatrix) -> tuple[int, ...]:
        """⟨c, α⟩ = Σ_k c_k α_k."""

        nvars = len(matrix.columns[0]) - 1
        return tuple(
            sum(count * alpha[axis] for count, alpha in zip(side, matrix.exponents, strict=True))
            for axis in range(nvars)
        )


@dataclass(frozen=True, slots=True)
class BoxIntegrand:
    """(−1)^{|c|}|c|!·z^{exponent}/f^{power}."""

    exponent: tuple[int, ...]
    power: int
    sign: int
    factorial: int

    def numerator(self) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(self.exponent, self.sign * self.factorial)


def a_matrix_kernel(
    f: LaurentPolynomial,
    settings: GkzSettings | None = None,
) -> tuple[AMatrix, list[KernelVector]]:
    """A from supp f and a reduced integer basis of ker A.

    Basis vectors with an entry above ``settings.max_kernel_entry`` are
    dropped with a warning.
    """

    config = settings or GkzSettings()
    matrix = AMatrix.of(f)
    if not matrix.columns:
        raise ValueError("the zero polynomial has no A-matrix")
    kernel = [KernelVector(b=vector) for vector in integer_kernel(matrix.rows())]
    kept = [vector for vector in kernel if vector.max_entry <= config.max_kernel_entry]
    if len(kept) < len(kernel):
        logger.warning(
            "dropped %d kernel vectors with entries above %d",
            len(kernel) - len(kept),
            config.max_kernel_entry,
        )
    for vector in kept:
        _check_kernel_vector(vector, matrix)
    return matrix, kept


def _check_kernel_vector(vector: KernelVector, matrix: AMatrix) -> None:
    if sum(vector.plus) != sum(vector.minus):
        raise InvariantViolation(f"kernel vector {vector.b} has |b⁺| ≠ |b⁻|", module="gkz")
    if vector.exponent(vector.plus, matrix) != vector.exponent(vector.minus, matrix):
        raise InvariantViolation(f"kernel vector {vector.b} has ⟨b⁺,α⟩ ≠ ⟨b⁻,α⟩", module="gkz")


def _guard_discriminant(f: LaurentPolynomial) -> None:
    """Reject the singular locus E_A = 0 when supp f is the full unit square."""

    coefficients = example3_coefficients(f)
    if coefficients is None or len(f) != 4:
        return
    a1, a2, a3, a4 = coefficients
    scale = max(abs(a1 * a4), abs(a2 * a3))
    if abs(example3_discriminant(coefficients)) <= _DISCRIMINANT_RTOL * scale * abs(a1 * a2 * a3 * a4):
        raise OnDiscriminant(f"coefficients {coefficients} satisfy a₁a₄ = a₂a₃", module="gkz")


def coefficient_derivative(
    f: LaurentPolynomial,
    index: int,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    decay: DecaySettings | None = None,
) -> MellinValue:
    """∂M/∂a_k = −∫ z^{s+α_k}/f² dz/z."""

    exponent = f.support[index]
    return mellin_eval(LaurentPolynomial.monomial(exponent, -1), f, 2, s, theta, spec, decay=decay)


def symbolic_degree_identity(f: LaurentPolynomial) -> LaurentPolynomial:
    """f + Σ a_k·(−z^{α_k}), the degree row's integrand numerator over f²; zero for every f."""

    remainder = f
    for exponent, value in f.terms:
        remainder = remainder - LaurentPolynomial.monomial(exponent, value)
    return remainder


@dataclass(slots=True)
class EulerResidual:
    residuals: list[float]
    value: MellinValue
    derivatives: list[MellinValue] = field(default_factory=list)

    @property
    def err_estimate(self) -> float:
        return self.value.err_estimate + sum(d.err_estimate for d in self.derivatives)


def euler_residual(
    f: LaurentPolynomial,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    decay: DecaySettings | None = None,
) -> EulerResidual:
    """Normalized |M + Σa_k∂_kM| and |s_jM + Σ_k α_{jk}a_k∂_kM| for j = 1..n."""

    _guard_discriminant(f)
    base = mellin_eval(LaurentPolynomial.constant(1, f.nvars), f, 1, s, theta, spec, decay=decay)
    if base.value == 0:
        raise DomainError(f"M vanishes at s={s.values()}; residuals cannot be normalized", module="gkz")
    derivatives = [coefficient_derivative(f, index, s, theta, spec, decay=decay) for index in range(len(f))]
    weighted = [complex(value) * d.value for (_, value), d in zip(f.to_complex().terms, derivatives, strict=True)]

    scale = abs(base.value)
    residuals = [abs(base.value + sum(weighted)) / scale]
    for axis, s_j in enumerate(s.values()):
        row = s_j * base.value + sum(alpha[axis] * w for alpha, w in zip(f.support, weighted, strict=True))
        residuals.append(abs(row) / scale)
    logger.debug("euler_residual at s=%s: %s", s.values(), residuals)
    return EulerResidual(residuals=residuals, value=base, derivatives=derivatives)


def box_integrands(
    f: LaurentPolynomial,
    b: KernelVector,
    matrix: AMatrix | None = None,
) -> tuple[BoxIntegrand, BoxIntegrand]:
    """Integrands of ∂^{b⁺}M and ∂^{b⁻}M; raises InvariantViolation unless they coincide."""

    matrix = matrix or AMatrix.of(f)
    if len(b.b) != len(matrix.columns):
        raise ValueError(f"b has {len(b.b)} entries but f has {len(matrix.columns)} terms")
    sides = []
    for side in (b.plus, b.minus):
        order = sum(side)
        sides.append(
            BoxIntegrand(
                exponent=b.exponent(side, matrix),
                power=1 + order,
                sign=-1 if order % 2 else 1,
                factorial=math.factorial(order),
            )
        )
    plus, minus = sides
    if (plus.exponent, plus.power) != (minus.exponent, minus.power):
        raise InvariantViolation(
            f"□_b integrands differ for b={b.b}: "
            f"z^{plus.exponent}/f^{plus.power} vs z^{minus.exponent}/f^{minus.power}",
            module="gkz",
        )
    return plus, minus


@dataclass(slots=True)
class BoxResidual:
    b: tuple[int, ...]
    residual: float
    plus: MellinValue | None
    minus: MellinValue | None

    @property
    def err_estimate(self) -> float:
        return sum(side.err_estimate for side in (self.plus, self.minus) if side is not None)


def box_residual(
    f: LaurentPolynomial,
    b: KernelVector | Sequence[int],
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    decay: DecaySettings | None = None,
) -> BoxResidual:
    """|∂^{b⁺}M − ∂^{b⁻}M| normalized by |∂^{b⁺}M|."""

    vector = b if isinstance(b, KernelVector) else KernelVector(b=tuple(int(value) for value in b))
    if not any(vector.b):
        return BoxResidual(b=vector.b, residual=0.0, plus=None, minus=None)
    _guard_discriminant(f)
    plus, minus = box_integrands(f, vector)
    values = [mellin_eval(side.numerator(), f, side.power, s, theta, spec, decay=decay) for side in (plus, minus)]
    scale = max(abs(values[0].value), abs(values[1].value))
    residual = abs(values[0].value - values[1].value) / scale if scale > 0 else 0.0
    return BoxResidual(b=vector.b, residual=residual, plus=values[0], minus=values[1])


@dataclass(slots=True)
class GkzReport:
    matrix: AMatrix
    kernel: list[KernelVector]
    euler: EulerResidual
    boxes: list[BoxResidual]

    @property
    def max_residual(self) -> float:
        return max([*self.euler.residuals, *(box.residual for box in self.boxes)])


def gkz_check(
    f: LaurentPolynomial,
    s: TubePoint,
    theta: ArgDirection | Sequence[float] | None = None,
    spec: QuadratureSpec | None = None,
    *,
    settings: GkzSettings | None = None,
    decay: DecaySettings | None = None,
) -> GkzReport:
    """Kernel, Euler residuals and one box residual per kernel basis vector."""

    matrix, kernel = a_matrix_kernel(f, settings)
    euler = euler_residual(f, s, theta, spec, decay=decay)
    boxes = [box_residual(f, vector, s, theta, spec, decay=decay) for vector in kernel]
    return GkzReport(matrix=matrix, kernel=kernel, euler=euler, boxes=boxes)
