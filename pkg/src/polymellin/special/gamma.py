"""Complex gamma function via the Lanczos approximation (g = 7, nine terms).

Arguments with Re z < 1/2 go through the reflection formula
Γ(z)Γ(1−z) = π / sin(πz). All functions accept scalars or arrays.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

_LANCZOS_G = 7.0
_LANCZOS_COEFFICIENTS = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_TWO_PI = 0.5 * np.log(2.0 * np.pi)


def _loggamma_right(z: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """log Γ(z) for Re z ≥ 1/2."""

    shifted = z - 1.0
    series = np.full_like(shifted, _LANCZOS_COEFFICIENTS[0])
    for index in range(1, len(_LANCZOS_COEFFICIENTS)):
        series = series + _LANCZOS_COEFFICIENTS[index] / (shifted + index)
    t = shifted + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (shifted + 0.5) * np.log(t) - t + np.log(series)


def loggamma(z: ArrayLike) -> NDArray[np.complex128]:
    """A branch of log Γ(z); exp(loggamma(z)) == gamma(z) away from the poles."""

    values = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        direct = _loggamma_right(values)
        reflected = np.log(np.pi) - np.log(np.sin(np.pi * values)) - _loggamma_right(1.0 - values)
    return np.where(values.real < 0.5, reflected, direct)


def gamma(z: ArrayLike) -> NDArray[np.complex128]:
    """Γ(z); infinite at nonpositive integers."""

    values = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        direct = np.exp(_loggamma_right(values))
        reflected = np.pi / (np.sin(np.pi * values) * np.exp(_loggamma_right(1.0 - values)))
    return np.where(values.real < 0.5, reflected, direct)


def rgamma(z: ArrayLike) -> NDArray[np.complex128]:
    """1/Γ(z), entire: exactly zero at nonpositive integers."""

    values = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        direct = np.exp(-_loggamma_right(values))
        reflected = np.sin(np.pi * values) * np.exp(_loggamma_right(1.0 - values)) / np.pi
    result = np.where(values.real < 0.5, reflected, direct)
    poles = (values.imag == 0) & (values.real <= 0) & (values.real == np.round(values.real))
    return np.where(poles, 0.0 + 0.0j, result)


def gamma_scalar(z: complex) -> complex:
    return complex(gamma(z))


def distance_to_gamma_pole(z: complex) -> float:
    """Distance from z to the nearest nonpositive integer."""

    nearest = min(0.0, float(round(z.real)))
    return abs(z - nearest)
