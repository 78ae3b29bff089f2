"""Exact linear algebra helpers shared across modules (not public API)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import Scalar

ScalarMatrix = list[list[Scalar]]


def insert_echelon_row(echelon: list[list[Fraction]], pivots: list[int],
                       row: Sequence[Fraction]) -> bool:
    """Reduce row against the echelon; insert and return True if independent."""
    work = list(row)
    for erow, p in zip(echelon, pivots):
        if work[p] != 0:
            f = work[p] / erow[p]
            for c in range(len(work)):
                work[c] -= f * erow[c]
    pivot = next((c for c, v in enumerate(work) if v != 0), None)
    if pivot is None:
        return False
    echelon.append(work)
    pivots.append(pivot)
    return True


def fraction_nullspace(columns: list[list[Fraction]], rows: int) -> list[list[Fraction]]:
    """Kernel of x -> sum x_c columns[c], basis ordered by free coordinate."""
    ncols = len(columns)
    if ncols == 0:
        return []
    mat = [[columns[c][r] for c in range(ncols)] for r in range(rows)]
    pivot_of_col: dict[int, int] = {}
    rank = 0
    for c in range(ncols):
        sel = next((r for r in range(rank, rows) if mat[r][c] != 0), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        lead = mat[rank][c]
        mat[rank] = [v / lead for v in mat[rank]]
        for r in range(rows):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        pivot_of_col[c] = rank
        rank += 1
    out = []
    for free in range(ncols):
        if free in pivot_of_col:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for c, r in pivot_of_col.items():
            vec[c] = -mat[r][free]
        out.append(vec)
    return out


def scalar_identity(n: int) -> ScalarMatrix:
    return [[Scalar.rational(1 if i == j else 0) for j in range(n)] for i in range(n)]


def scalar_mat_mul(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Scalar.zero()] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            if a[i][k].is_zero():
                continue
            for j in range(p):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def scalar_mat_vec(a: ScalarMatrix, v: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a[i][k] * v[k] for k in range(len(v)) if not a[i][k].is_zero()),
                Scalar.zero()) for i in range(len(a))]


def scalar_mat_add(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_mat_neg(a: ScalarMatrix) -> ScalarMatrix:
    return [[-x for x in row] for row in a]


def scalar_mat_eq(a: ScalarMatrix, b: ScalarMatrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def scalar_transpose(a: ScalarMatrix) -> ScalarMatrix:
    return [list(col) for col in zip(*a)]


def scalar_matrix_determinant(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(matrix)
    if n == 0:
        return Scalar.one()
    if n == 1:
        return matrix[0][0]
    total = Scalar.zero()
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in matrix[1:]]
        term = entry * scalar_matrix_determinant(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def scalar_matrix_inverse(matrix: Sequence[Sequence[Scalar]]) -> ScalarMatrix:
    """Adjugate inverse; the determinant must be a single-signature scalar."""
    n = len(matrix)
    det = scalar_matrix_determinant(matrix)
    if det.is_zero():
        raise ValueError("matrix is singular")
    inv_det = Scalar.one() / det
    out = [[Scalar.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[matrix[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = scalar_matrix_determinant(minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * inv_det
    return out


def symmetric(matrix: ScalarMatrix) -> bool:
    n = len(matrix)
    return all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i + 1, n))


def positive_definite(matrix: ScalarMatrix) -> bool:
    """Sylvester criterion for symmetric matrices with rational entries."""
    n = len(matrix)
    for k in range(1, n + 1):
        minor = [[matrix[i][j] for j in range(k)] for i in range(k)]
        if scalar_matrix_determinant(minor).as_fraction() <= 0:
            return False
    return True
