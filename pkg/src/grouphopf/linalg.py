"""Dense exact matrices over Fraction: just what the operator layer needs."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mat_from_rows(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[x * c for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            c = arow[t]
            if not c:
                continue
            brow = b[t]
            for j in range(m):
                if brow[j]:
                    orow[j] += c * brow[j]
    return out


def mat_vec(a: Matrix, v: Sequence[Fraction]):
    return [sum((c * x for c, x in zip(row, v) if c), Fraction(0)) for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if x != y:
                return False
    return True


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_inv(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ValueError when singular."""
    n = len(a)
    work = [list(row) + irow for row, irow in zip(a, identity(n))]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_pow_series_exp(a: Matrix, max_power: int = 200) -> Matrix:
    """exp of a nilpotent matrix, exact; raises if the series does not stop."""
    n = len(a)
    out = identity(n)
    term = identity(n)
    k = 0
    while True:
        k += 1
        if k > max_power:
            raise ValueError("matrix exponential did not terminate (not nilpotent)")
        term = mat_mul(term, a)
        term = mat_scale(term, Fraction(1, k))
        if is_zero_matrix(term):
            break
        out = mat_add(out, term)
    return out


def kron_graded(a: Matrix, deg_a_cols: Sequence[int], b: Matrix,
                deg_b: int) -> Matrix:
    """Graded Kronecker product of homogeneous operators A⊗B.

    (A⊗B)(m⊗n) = (-1)^{|B||m|} (Am)⊗(Bn): the sign depends on the degree of
    the source basis vector of the first factor (``deg_a_cols``) and the
    degree of the operator B.
    """
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = zeros(ra * rb, ca * cb)
    odd_b = deg_b % 2
    for i in range(ra):
        for k in range(ca):
            if not a[i][k]:
                continue
            sign = -1 if (odd_b and deg_a_cols[k] % 2) else 1
            c = a[i][k] * sign
            for j in range(rb):
                brow = b[j]
                orow = out[i * rb + j]
                for l in range(cb):
                    if brow[l]:
                        orow[k * cb + l] += c * brow[l]
    return out
