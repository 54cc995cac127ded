"""Exact rational linear algebra and lattice primitives.

Every quantity in this package is a :class:`fractions.Fraction` (or a plain
int for lattice data).  Fractions are always stored in lowest terms with a
positive denominator, so equality and ordering are exact; no floating point
enters any computation here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
IntVec = tuple[int, ...]
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


class SingularMatrixError(ValueError):
    pass


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce ints, Fractions, and "p/q" strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


def format_rat(q: Fraction) -> str:
    """Render as "p/q", or just "p" for integers (the JSON wire format)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def as_mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(as_vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("inconsistent row lengths")
    return out


def vec_add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b, strict=True))


def gcd_primitive(v: Sequence[int]) -> tuple[IntVec, int]:
    """Reduce an integer vector to its primitive form.

    Returns ``(v/g, g)`` with ``g = gcd(|entries|) > 0``; the direction is
    preserved (the sign is never flipped, so inward normals stay inward).
    """
    if all(x == 0 for x in v):
        raise ValueError("zero direction")
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v), g


def primitive_direction(d: Sequence[Fraction]) -> tuple[IntVec, Fraction]:
    """Write a nonzero rational vector as t * u with u primitive integral, t > 0."""
    if all(x == 0 for x in d):
        raise ValueError("zero direction")
    denom = math.lcm(*(x.denominator for x in d))
    ints = [int(x * denom) for x in d]
    u, g = gcd_primitive(ints)
    return u, Fraction(g, denom)


def mat_det(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination with exact pivoting."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    a = [list(map(rat, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def is_unimodular(rows: Sequence[Sequence[int]]) -> bool:
    """True iff the square integer matrix has determinant +1 or -1."""
    d = mat_det(rows)
    return d == 1 or d == -1


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> Vec:
    """Exact unique solution of A x = b; raises on singular systems."""
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("solve_linear requires a square system")
    a = [list(map(rat, r)) + [rat(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("degenerate system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def mat_inverse(rows: Sequence[Sequence]) -> Mat:
    n = len(rows)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve_linear(rows, e))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def mat_rank(rows: Sequence[Sequence]) -> int:
    """Exact rank via row reduction."""
    a = [list(map(rat, r)) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        rank += 1
        row += 1
        if row == len(a):
            break
    return rank


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return mat_rank([vec_sub(p, base) for p in points[1:]])


def floor_nthroot(m: int, n: int) -> int:
    """Largest integer r with r**n <= m (m >= 0)."""
    if m < 0 or n < 1:
        raise ValueError("floor_nthroot requires m >= 0, n >= 1")
    if n == 1 or m in (0, 1):
        return m
    if n == 2:
        return math.isqrt(m)
    # Newton iteration on integers, seeded from the bit length.
    r = 1 << -(-m.bit_length() // n)
    while True:
        nxt = ((n - 1) * r + m // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    while r ** n > m:
        r -= 1
    return r


def rational_nthroot(q: Fraction, n: int) -> Fraction | None:
    """Exact n-th root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("negative radicand")
    p = floor_nthroot(q.numerator, n)
    s = floor_nthroot(q.denominator, n)
    if p**n == q.numerator and s**n == q.denominator:
        return Fraction(p, s)
    return None


def nthroot_bounds(q: Fraction, n: int, digits: int) -> tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of q**(1/n) with hi - lo <= 10**-digits."""
    if q < 0:
        raise ValueError("negative radicand")
    scale = 10**digits
    # floor((num/den)^(1/n) * scale) = floor_nthroot(num * den^(n-1) * scale^n) // den
    lo_int = floor_nthroot(q.numerator * q.denominator ** (n - 1) * scale**n, n) // q.denominator
    return Fraction(lo_int, scale), Fraction(lo_int + 1, scale)


def _floor_root_scaled(q: Fraction, n: int, k: int) -> int:
    """floor(q**(1/n) * 10**k), exact for any integer k."""
    if k >= 0:
        return floor_nthroot(q.numerator * q.denominator ** (n - 1) * 10 ** (n * k), n) // q.denominator
    return floor_nthroot(q.numerator * q.denominator ** (n - 1), n) // (q.denominator * 10**-k)


def nthroot_decimal(q: Fraction, n: int, sig: int = 30) -> str:
    """Decimal rendering of q**(1/n) truncated to ``sig`` significant digits.

    Presentation only: the digits come from exact integer n-th roots with
    remainder, never from floating point.
    """
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return "0"
    # Locate the leading digit: e with 10^e <= q^(1/n) < 10^(e+1).
    guard = 30
    while _floor_root_scaled(q, n, guard) == 0:
        guard *= 2
    e = len(str(_floor_root_scaled(q, n, guard))) - 1 - guard
    digits = str(_floor_root_scaled(q, n, sig - 1 - e))
    int_digits = e + 1
    if int_digits <= 0:
        return "0." + "0" * (-int_digits) + digits
    if int_digits >= len(digits):
        return digits + "0" * (int_digits - len(digits))
    return digits[:int_digits] + "." + digits[int_digits:]
