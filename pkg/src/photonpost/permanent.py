"""Matrix permanents.

The workhorse is a Gray-code Ryser evaluation with O(2^n * n) cost; tiny
matrices short-circuit to closed forms since they dominate the call
profile when conditioning on detection patterns.  A naive permutation-sum
oracle is kept alongside so the fast kernel can always be cross-checked
against an independent route.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .errors import DimensionTooLarge, MismatchedTotals, NonSquare

# Hard cap on the expanded dimension; 2^30 steps is already out of reach
# for interactive use and anything larger is certainly a caller bug.
MAX_DIMENSION = 30


def _per2(m) -> complex:
    return m[0][0] * m[1][1] + m[0][1] * m[1][0]


def _per3(m) -> complex:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i + f * h) + b * (d * i + f * g) + c * (d * h + e * g)


def _per4(m) -> complex:
    total = 0j
    rows = [m[1], m[2], m[3]]
    for j in range(4):
        minor = [[row[k] for k in range(4) if k != j] for row in rows]
        total += m[0][j] * _per3(minor)
    return total


def _ryser_gray(a: np.ndarray) -> complex:
    """Ryser's inclusion-exclusion sum walked in Gray-code order.

    Each step flips one column in or out of the active subset, so the
    row-sum vector is updated in O(n) instead of being rebuilt.
    """
    n = a.shape[0]
    cols = [np.ascontiguousarray(a[:, j]) for j in range(n)]
    w = np.zeros(n, dtype=complex)
    gray = 0
    sign = 1
    total = 0j
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        bit = 1 << j
        gray ^= bit
        if gray & bit:
            w += cols[j]
        else:
            w -= cols[j]
        sign = -sign
        total += sign * w.prod()
    if n % 2:
        total = -total
    return complex(total)


def _kernel(a: np.ndarray) -> complex:
    n = a.shape[0]
    if n == 0:
        return 1 + 0j
    if n <= 4:
        m = a.tolist()
        if n == 1:
            return complex(m[0][0])
        if n == 2:
            return complex(_per2(m))
        if n == 3:
            return complex(_per3(m))
        return complex(_per4(m))
    return _ryser_gray(a)


def _validated(matrix) -> np.ndarray:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"permanent needs a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIMENSION:
        raise DimensionTooLarge(
            f"dimension {a.shape[0]} exceeds the supported maximum {MAX_DIMENSION}"
        )
    return a


def permanent(matrix) -> complex:
    """Permanent of a square complex matrix (empty matrix gives 1)."""
    return _kernel(_validated(matrix))


def permanent_naive(matrix) -> complex:
    """Permutation-sum permanent, O(n! * n).

    Independent oracle for testing the fast kernel; keep n small.
    """
    a = _validated(matrix)
    n = a.shape[0]
    total = 0j
    for perm in itertools.permutations(range(n)):
        term = 1 + 0j
        for i, j in enumerate(perm):
            term *= a[i, j]
        total += term
    return complex(total)


def permanent_with_multiplicity(
    base, row_reps: Sequence[int], col_reps: Sequence[int]
) -> complex:
    """Permanent of `base` with row i repeated row_reps[i] times and
    column j repeated col_reps[j] times.

    Both repetition vectors must sum to the same total (the expanded
    matrix must stay square); zero total gives the empty permanent, 1.
    """
    a = np.asarray(base, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"base matrix must be square, got shape {a.shape}")
    rows = [int(r) for r in row_reps]
    cols = [int(c) for c in col_reps]
    if len(rows) != a.shape[0] or len(cols) != a.shape[1]:
        raise MismatchedTotals(
            "repetition vectors must match the base matrix dimensions"
        )
    if any(r < 0 for r in rows) or any(c < 0 for c in cols):
        raise MismatchedTotals("repetition counts must be non-negative")
    total = sum(rows)
    if total != sum(cols):
        raise MismatchedTotals(
            f"row repetitions sum to {total}, column repetitions to {sum(cols)}"
        )
    if total == 0:
        return 1 + 0j
    if total > MAX_DIMENSION:
        raise DimensionTooLarge(
            f"expanded dimension {total} exceeds the supported maximum {MAX_DIMENSION}"
        )
    expanded = a[np.repeat(np.arange(a.shape[0]), rows), :]
    expanded = expanded[:, np.repeat(np.arange(a.shape[1]), cols)]
    return _kernel(expanded)
