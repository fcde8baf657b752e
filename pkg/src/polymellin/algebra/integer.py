"""Exact integer linear algebra: lattice kernels and rational inverses."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray
from sympy import Matrix

from polymellin.errors import SingularMatrix

IntMatrix = NDArray[np.object_]


def exgcd(a: int, b: int) -> IntMatrix:
    """2x2 integer matrix M with det 1 and M @ [a, b] = [gcd(a, b), 0]."""

    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    work = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while work[1, 0] != 0:
        quotient = work[0, 0] // work[1, 0]
        work[0] -= quotient * work[1]
        work = work[::-1]

    divisor = work[0, 0]
    transform = work[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if divisor != 0:
        transform[1] = [-b_sign * b // divisor, a_sign * a // divisor]
    return transform


def column_hermite_form(matrix: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, int]:
    """Unimodular column reduction H = A @ U.

    Returns (H, U, rank); columns rank.. of H are zero, so the matching
    columns of U are a lattice basis of the integer kernel of A.
    """

    reduced = np.array(matrix, dtype=object)
    if reduced.ndim != 2:
        raise ValueError("expected a two-dimensional integer matrix")
    rows, cols = reduced.shape
    transform = np.eye(cols, dtype=object)
    pivot = 0
    for row in range(rows):
        if pivot >= cols:
            break
        for column in range(pivot + 1, cols):
            if reduced[row, column] == 0:
                continue
            step = exgcd(reduced[row, pivot], reduced[row, column]).T
            reduced[:, [pivot, column]] = reduced[:, [pivot, column]] @ step
            transform[:, [pivot, column]] = transform[:, [pivot, column]] @ step
        if reduced[row, pivot] != 0:
            pivot += 1
    return reduced, transform, pivot


def _l1(vector: Sequence[int]) -> int:
    return sum(abs(int(value)) for value in vector)


def _reduce_basis(basis: list[list[int]]) -> list[list[int]]:
    changed = True
    while changed:
        changed = False
        for i, target in enumerate(basis):
            for j, other in enumerate(basis):
                if i == j:
                    continue
                norm = sum(value * value for value in other)
                quotient = round(Fraction(sum(a * b for a, b in zip(target, other, strict=True)), norm))
                for step in {quotient, 1, -1} - {0}:
                    candidate = [a - step * b for a, b in zip(target, other, strict=True)]
                    if _l1(candidate) < _l1(target):
                        basis[i] = target = candidate
                        changed = True
    return basis


def _orient(vector: list[int]) -> tuple[int, ...]:
    for value in vector:
        if value != 0:
            return tuple(vector) if value > 0 else tuple(-entry for entry in vector)
    return tuple(vector)


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced integer basis of {b ∈ ℤᴺ : A b = 0}, first nonzero entry positive."""

    _, transform, rank = column_hermite_form(matrix)
    basis = [[int(value) for value in transform[:, column]] for column in range(rank, transform.shape[1])]
    reduced = _reduce_basis(basis)
    return sorted((_orient(vector) for vector in reduced), key=lambda vector: (_l1(vector), vector))


def rational_inverse(matrix: Sequence[Sequence[int]]) -> tuple[int, list[list[Fraction]]]:
    """Return (det, inverse) computed exactly."""

    exact = Matrix([list(row) for row in matrix])
    if exact.rows != exact.cols:
        raise SingularMatrix(f"expected a square matrix, got {exact.rows}x{exact.cols}")
    determinant = int(exact.det())
    if determinant == 0:
        raise SingularMatrix("exponent matrix is singular")
    inverse = exact.inv()
    entries = [
        [Fraction(int(inverse[row, col].p), int(inverse[row, col].q)) for col in range(exact.cols)]
        for row in range(exact.rows)
    ]
    return determinant, entries
