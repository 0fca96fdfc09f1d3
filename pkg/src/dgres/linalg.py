"""Exact linear algebra over the rationals (fractions.Fraction).

Dense row-list matrices; sizes here are small (hundreds at most), so plain
fraction-pivot Gaussian elimination is fine and keeps everything exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _check(mat: Sequence[Sequence]) -> Matrix:
    out = []
    width = None
    for row in mat:
        r = []
        for x in row:
            if isinstance(x, float):
                raise TypeError("floating point is not allowed in exact linear algebra")
            r.append(Fraction(x))
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        out.append(r)
    return out


def rref(mat: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (R, pivot_column_indices)."""
    a = _check(mat)
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(mat: Sequence[Sequence]) -> int:
    if not mat or not mat[0]:
        return 0
    _, pivots = rref(mat)
    return len(pivots)


def nullspace(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    a = _check(mat)
    if not a:
        return []
    cols = len(a[0])
    R, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def solve(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One particular solution of A x = b (free variables set to 0), or None."""
    a = _check(mat)
    b = [Fraction(x) for x in rhs]
    if not a:
        return [] if not any(b) else None
    rows, cols = len(a), len(a[0])
    if len(b) != rows:
        raise ValueError("rhs length mismatch")
    aug = [a[i] + [b[i]] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None  # inconsistent: pivot in the rhs column
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    a = _check(a)
    b = _check(b)
    if not a or not b:
        return []
    n, k = len(a), len(a[0])
    if len(b) != k:
        raise ValueError("dimension mismatch")
    m = len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                row = out[i]
                for j in range(m):
                    if bt[j]:
                        row[j] += c * bt[j]
    return out
