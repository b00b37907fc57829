"""Exact matrix arithmetic over the rationals.

Matrices are tuples of row tuples holding ``int`` or ``fractions.Fraction``.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(_norm(x) for x in row) for row in rows)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, (int, Fraction)):
        return x
    return Fraction(x)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def dims(a: Matrix):
    return len(a), (len(a[0]) if a else 0)


def mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(_norm(sum(x * y for x, y in zip(row, col) if x and y)) for col in cols) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(_norm(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(_norm(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(_norm(c * x) for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = len(b)
        for row in b:
            rows.append((0,) * off + tuple(row) + (0,) * (n - off - k))
        off += k
    return tuple(rows)


def _rref(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = Fraction(1) / pr[c]
        if inv != 1:
            rows[r] = pr = [x * inv for x in pr]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [x - f * y for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(a: Matrix) -> int:
    rows = [list(map(Fraction, row)) for row in a]
    return len(_rref(rows, dims(a)[1]))


def det(a: Matrix):
    n = len(a)
    rows = [list(map(Fraction, row)) for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / rows[c][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return _norm(d)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    piv = _rref(rows, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return mat(row[n:] for row in rows)


def power(a: Matrix, e: int) -> Matrix:
    if e < 0:
        a, e = inverse(a), -e
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def nullspace(a: Sequence[Sequence]) -> list[tuple]:
    """Basis of ``{x : a x = 0}`` as tuples of exact rationals."""
    ncols = len(a[0]) if a else 0
    rows = [list(map(Fraction, row)) for row in a if any(row)]
    piv = _rref(rows, ncols) if rows else []
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -rows[r][f]
        basis.append(tuple(_norm(x) for x in v))
    return basis


def flatten(a: Matrix) -> tuple:
    return tuple(x for row in a for x in row)


def is_identity(a: Matrix) -> bool:
    return a == identity(len(a))
