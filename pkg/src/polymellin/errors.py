from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar


class PolyMellinError(Exception):
    """Base error type for polymellin.

    ``default_module`` names the owning module; a raise site in another module
    passes ``module=`` instead.
    """

    default_module: ClassVar[str] = "polymellin"

    def __init__(self, *args: object, module: str | None = None) -> None:
        super().__init__(*args)
        self._module = module

    @property
    def module(self) -> str:
        owner: str | None = getattr(self, "_module", None)
        return owner or self.default_module

    @property
    def kind(self) -> str:
        return type(self).__name__


class ConfigError(PolyMellinError):
    """Raised when configuration cannot be loaded or validated."""

    default_module = "config"


class UsageError(PolyMellinError):
    """Raised when a command line cannot be turned into a command spec."""

    default_module = "cli"
    exit_code: ClassVar[int] = 2


class InputFormatError(PolyMellinError):
    """Raised when a polynomial or report file does not match its schema."""

    default_module = "laurent_algebra"


class DegeneratePolytope(PolyMellinError):
    """Raised when a support set does not span a full-dimensional polytope."""

    default_module = "lattice_geometry"


class UnsupportedDimension(PolyMellinError):
    """Raised when an operation is asked for more variables than it handles."""

    default_module = "mellin_core"


class Unsupported(PolyMellinError):
    """Raised when an input lies outside what an algorithm covers."""

    default_module = "special_oracles"


class EvaluationOverflow(PolyMellinError):
    """Raised when a monomial's log-modulus leaves the safe double range."""

    default_module = "laurent_algebra"


class DomainError(PolyMellinError):
    """Raised when an evaluation point lies outside the validity domain."""

    default_module = "mellin_core"


class NearZeroDenominator(PolyMellinError):
    """Raised when the denominator nearly vanishes on a torus fiber."""

    default_module = "mellin_core"


class InvariantViolation(PolyMellinError):
    """Raised when an internal mathematical invariant fails (a bug, not bad input)."""

    default_module = "continuation"


class SingularMatrix(PolyMellinError):
    """Raised when an exponent matrix is not invertible."""

    default_module = "special_oracles"


class RepeatedRoot(PolyMellinError):
    """Raised when a univariate polynomial has a (numerically) repeated root."""

    default_module = "special_oracles"


class OnDiscriminant(PolyMellinError):
    """Raised when coefficients lie on the singular locus and no limit formula applies."""

    default_module = "special_oracles"


@dataclass(slots=True)
class NoConvergence(PolyMellinError):
    """Quadrature refinement was exhausted before the tolerance was met."""

    message: str
    value: complex
    err_estimate: float
    refinements: int

    default_module: ClassVar[str] = "mellin_core"

    def __str__(self) -> str:
        return (
            f"{self.message} (last value {self.value:.12g}, "
            f"successive difference {self.err_estimate:.3e} after {self.refinements} refinements)"
        )


@dataclass(slots=True)
class PoleHit(PolyMellinError):
    """The evaluation point sits on a zero of an accumulated pole factor."""

    facet: int
    shift: int
    residual: float

    default_module: ClassVar[str] = "continuation"

    def __str__(self) -> str:
        return f"s lies on the polar hyperplane of facet {self.facet} with shift {self.shift} (|u|={self.residual:.3e})"
