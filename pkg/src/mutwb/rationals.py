"""Exact rational scalars and small dense matrices.

Wire format keeps every number as a ``"p/q"`` string.  The matrix helpers
work over any field whose elements support ``+ - * /`` and compare to
``zero``/``one`` (used with :class:`fractions.Fraction` and the small
prime fields in :mod:`mutwb.q0`).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple, ...]


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def mat_from_rows(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int, one, zero) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, zero) -> Matrix:
    rows, inner = mat_shape(a)
    inner2, cols = mat_shape(b)
    if inner != inner2:
        raise ValueError("matrix shape mismatch")
    out = []
    for i in range(rows):
        out.append(
            tuple(
                sum((a[i][t] * b[t][j] for t in range(inner)), start=zero)
                for j in range(cols)
            )
        )
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence, zero):
    rows, cols = mat_shape(a)
    if cols != len(v):
        raise ValueError("matrix/vector shape mismatch")
    return tuple(sum((a[i][j] * v[j] for j in range(cols)), start=zero) for i in range(rows))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_det(a: Matrix, zero, one):
    """Determinant by fraction-free-ish Gaussian elimination (exact field)."""
    n, m = mat_shape(a)
    if n != m:
        raise ValueError("determinant needs a square matrix")
    rows = [list(r) for r in a]
    det = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != zero), None)
        if pivot is None:
            return zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = zero - det
        det = det * rows[col][col]
        inv = one / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != zero:
                factor = rows[r][col] * inv
                for c in range(col, n):
                    rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def mat_inv(a: Matrix, zero, one) -> Matrix:
    """Gauss-Jordan inverse; raises ValueError on singular input."""
    n, m = mat_shape(a)
    if n != m:
        raise ValueError("inverse needs a square matrix")
    rows = [list(r) + list(identity(n, one, zero)[i]) for i, r in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != zero), None)
        if pivot is None:
            raise ValueError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = one / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != zero:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def mat_pow(a: Matrix, k: int, zero, one) -> Matrix:
    """Integer matrix power; negative exponents via exact inverse."""
    n, _ = mat_shape(a)
    if k < 0:
        return mat_pow(mat_inv(a, zero, one), -k, zero, one)
    result = identity(n, one, zero)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base, zero)
        base = mat_mul(base, base, zero)
        k >>= 1
    return result


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return mat_shape(a) == mat_shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def mat_kernel(a: Matrix, zero, one) -> tuple[tuple, ...]:
    """Basis of the right kernel, via reduced row echelon form."""
    n, m = mat_shape(a)
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, n) if rows[i][col] != zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = one / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != zero:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * m
        vec[fc] = one
        for pr, pc in enumerate(pivots):
            vec[pc] = zero - rows[pr][fc]
        basis.append(tuple(vec))
    return tuple(basis)


def mat_to_json(a: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in a]


def mat_from_json(rows: Sequence[Sequence[str]]) -> Matrix:
    return tuple(tuple(parse_rational(x) for x in row) for row in rows)
