"""Exact rational arithmetic, small dense linear algebra, and polynomials.

Every value is a :class:`fractions.Fraction` and every operation is exact.
Matrices are small (at most 8x8 in practice) row-major lists of Fraction
rows.  Polynomials are coefficient lists in ascending degree; the zero
polynomial is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import DimensionError, SingularMatrixError

Matrix = list[list[Fraction]]
Polynomial = list[Fraction]


def rat(value) -> Fraction:
    """Coerce int / str / Fraction to Fraction, rejecting floats.

    A binary float silently snaps to a nearby rational and would poison
    exact sign computations downstream, so floats are refused outright.
    """
    if isinstance(value, float):
        raise TypeError("float values are not exact; pass str, int or Fraction")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" (or the integer shorthand "num") into a Fraction."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Canonical string form: "num/den", shortened to "num" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _require_square(m: Matrix) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise DimensionError(f"matrix is not square: {n} rows, row of length {len(row)}")
    return n


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its entry
    denominators (a positive factor that is divided back out at the end),
    so intermediate entries stay integral and their growth is bounded by
    the Bareiss division rule.
    """
    n = _require_square(m)
    if n == 0:
        return Fraction(1)
    scale = 1
    a: list[list[int]] = []
    for row in m:
        mult = lcm(*(f.denominator for f in row))
        scale *= mult
        a.append([f.numerator * (mult // f.denominator) for f in row])
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        for r in range(col + 1, n):
            row_r = a[r]
            row_c = a[col]
            factor = row_r[col]
            for c in range(col + 1, n):
                row_r[c] = (pivot * row_r[c] - factor * row_c[c]) // prev
            row_r[col] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def solve_linear(m: Matrix, rhs: list[Fraction]) -> list[Fraction]:
    """Exact solution of m @ x = rhs by Gaussian elimination.

    Raises SingularMatrixError when the matrix has no unique solution;
    upstream callers treat that as a general-position failure.
    """
    n = _require_square(m)
    if len(rhs) != n:
        raise DimensionError(f"rhs length {len(rhs)} does not match matrix size {n}")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for r in range(col + 1, n):
            factor = aug[r][col] / pivot
            if factor == 0:
                continue
            row_r = aug[r]
            row_c = aug[col]
            for c in range(col, n + 1):
                row_r[c] -= factor * row_c[c]
    result = [Fraction(0)] * n
    for row in range(n - 1, -1, -1):
        acc = aug[row][n]
        for c in range(row + 1, n):
            acc -= aug[row][c] * result[c]
        result[row] = acc / aug[row][row]
    return result


def eval_poly(p: Polynomial, x: Fraction) -> Fraction:
    """Exact Horner evaluation; the empty list is the zero polynomial."""
    acc = Fraction(0)
    for coeff in reversed(p):
        acc = acc * x + coeff
    return acc


def poly_trim(p: Polynomial) -> Polynomial:
    """Drop trailing zero coefficients so representations are canonical."""
    end = len(p)
    while end > 0 and p[end - 1] == 0:
        end -= 1
    return p[:end]


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    out = [Fraction(0)] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_mul_linear(p: Polynomial, root: Fraction) -> Polynomial:
    """Multiply p by the monic linear factor (x - root)."""
    if not p:
        return []
    out = [Fraction(0)] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] += c
        out[i] -= c * root
    return poly_trim(out)
