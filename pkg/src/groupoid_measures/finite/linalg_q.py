"""Exact linear algebra over the rationals (dense, Fraction entries)."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for j in range(k):
            aij = row[j]
            if aij:
                brow = b[j]
                for c in range(m):
                    if brow[c]:
                        acc[c] += aij * brow[c]
    return out


def is_zero(a: Matrix) -> bool:
    return all(not v for row in a for v in row)


def _echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Row-reduce a copy of ``a``; returns (RREF, pivot column list)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(_echelon(a)[1])


def nullspace(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel of ``a`` (one vector per free column)."""
    if not a:
        return []
    cols = len(a[0])
    rref, pivots = _echelon(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][free]
        basis.append(v)
    return basis
