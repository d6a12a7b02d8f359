"""Exact linear algebra over the rationals.

Matrices are plain lists of rows holding :class:`fractions.Fraction` (or
``int``) entries.  Everything here is dense but skips zero entries in the
inner loops, which is what the sparse structure-constant matrices need.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list
Matrix = list


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def vecmat(v: Sequence, a: Matrix) -> Vector:
    """Row vector times matrix."""
    ncols = len(a[0]) if a else 0
    acc = [Fraction(0)] * ncols
    for k, x in enumerate(v):
        if x:
            ak = a[k]
            for j in range(ncols):
                if ak[j]:
                    acc[j] += x * ak[j]
    return acc


def matvec(a: Matrix, v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with leading ones.

    Returns the nonzero rows of the reduced matrix and the pivot columns.
    """
    m = [[as_fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for j in nz:
                        mi[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank by forward elimination only (cheaper than a full RREF)."""
    m = [[as_fraction(x) for x in row] for row in rows if any(row)]
    if not m:
        return 0
    if ncols is None:
        ncols = len(m[0])
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        nz = [j for j in range(c + 1, ncols) if pr[j]]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f:
                f = f / pr[c]
                mi = m[i]
                mi[c] = Fraction(0)
                for j in nz:
                    mi[j] -= f * pr[j]
        r += 1
    return r


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in echelon order."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of A x = b, or None when the system is inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [[as_fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        pc = m[c][c]
        result *= pc
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f /= pc
                for j in range(c, n):
                    if m[c][j]:
                        m[i][j] -= f * m[c][j]
    return result


def reduce_modulo(v: Sequence, red: Matrix, pivots: Sequence[int]) -> Vector:
    """Reduce ``v`` against an RREF basis; the result is zero iff v is in the span."""
    out = list(v)
    for row, pc in zip(red, pivots):
        f = out[pc]
        if f:
            for j, x in enumerate(row):
                if x:
                    out[j] -= f * x
    return out


def primitive_integer(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    from math import gcd, lcm

    fr = [as_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints
