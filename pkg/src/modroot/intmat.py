"""Exact integer and rational matrices as tuples of tuples.

Small and dependency free; sizes in this package never exceed a few dozen.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import IntegralityError

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]
Vector = tuple  # tuple[int, ...]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(0 for _ in range(m)) for _ in range(n))


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def column(a: Matrix, j: int) -> Vector:
    return tuple(r[j] for r in a)


def columns(a: Matrix) -> list[Vector]:
    return [tuple(c) for c in transpose(a)]


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def is_skew(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))


def inverse(a: Matrix) -> Matrix:
    """Rational inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                t = m[r][c]
                m[r] = [x - t * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                t = m[r][c] / m[c][c]
                m[r] = [x - t * y for x, y in zip(m[r], m[c])]
    return d


def to_int(a: Matrix, what: str = "matrix") -> Matrix:
    """Convert a rational matrix to integers or raise IntegralityError."""
    out = []
    for row in a:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise IntegralityError(f"{what} has non-integral entry {x}")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def solve(a: Matrix, b: Sequence) -> tuple:
    """Solve a x = b for square nonsingular a over the rationals."""
    return matvec(inverse(a), b)


def fmt_vec(v: Sequence) -> str:
    return ",".join(str(x) for x in v)


def parse_vec(s: str) -> Vector:
    s = s.strip().strip("()[]")
    return tuple(int(x) for x in s.replace(" ", "").split(",") if x != "")


def nullspace(a: Matrix, ncols: int) -> list[tuple]:
    """Basis of the rational null space of a (rows may be empty)."""
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                t = m[k][c]
                m[k] = [x - t * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    from math import gcd, lcm

    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)
