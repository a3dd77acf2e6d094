"""Shared generators and independent oracles for the test suite."""

import itertools
from fractions import Fraction

from lgorbit.linalg import QMatrix
from lgorbit.orbit import Spectrum


def det_laplace(rows):
    """Determinant by Laplace expansion; independent of the elimination path."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * det_laplace(minor)
    return total


def rank_by_minors(matrix: QMatrix) -> int:
    """Rank as the largest r with a nonvanishing r x r minor."""
    rows = [list(matrix.row(i)) for i in range(matrix.rows)]
    for r in range(min(matrix.rows, matrix.cols), 0, -1):
        for row_idx in itertools.combinations(range(matrix.rows), r):
            for col_idx in itertools.combinations(range(matrix.cols), r):
                sub = [[rows[i][j] for j in col_idx] for i in row_idx]
                if det_laplace(sub) != 0:
                    return r
    return 0


def random_fraction(rng, span=9, max_den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_spectrum(rng, n) -> Spectrum:
    """Admissible spectrum: n random entries, final entry balancing the trace."""
    while True:
        head = [random_fraction(rng) for _ in range(n)]
        values = head + [-sum(head)]
        if len(set(values)) == n + 1:
            return Spectrum.from_values(values)


def random_nilpotent(rng, dim) -> QMatrix:
    """Strictly upper-triangular integer matrix, entries in [-3, 3]."""
    return QMatrix(
        [
            [rng.randint(-3, 3) if j > i else 0 for j in range(dim)]
            for i in range(dim)
        ],
        cols=dim,
    )


def random_invertible(rng, dim) -> QMatrix:
    while True:
        matrix = QMatrix(
            [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(dim)], cols=dim
        )
        if matrix.det() != 0:
            return matrix


def random_vector(rng, dim):
    while True:
        vec = tuple(Fraction(rng.randint(-5, 5)) for _ in range(dim))
        if any(v != 0 for v in vec):
            return vec
