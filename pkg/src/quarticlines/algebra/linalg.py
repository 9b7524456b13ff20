"""Small exact linear algebra on lists of raw field values."""
from __future__ import annotations

from typing import Sequence


def determinant(M: Sequence[Sequence], F):
    """Gaussian elimination over the field ``F``."""
    n = len(M)
    if n == 0:
        return F.one
    A = [list(r) for r in M]
    det = F.one
    z = F.zero
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != z), None)
        if piv is None:
            return z
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        pv = A[c][c]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        for r in range(c + 1, n):
            if A[r][c] == z:
                continue
            f = F.mul(A[r][c], inv)
            row_c, row_r = A[c], A[r]
            for j in range(c + 1, n):
                row_r[j] = F.sub(row_r[j], F.mul(f, row_c[j]))
            row_r[c] = z
    return det


def row_echelon(M: Sequence[Sequence], F):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    A = [list(r) for r in M]
    z = F.zero
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != z), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != z:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence], F) -> int:
    if not M:
        return 0
    return len(row_echelon(M, F)[1])


def kernel(M: Sequence[Sequence], F) -> list[list]:
    """Basis of the right kernel ``{v : M v = 0}``."""
    ncols = len(M[0])
    R, piv = row_echelon(M, F)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][fc])
        basis.append(v)
    return basis


def matmul(A, B, F):
    return [[_dot(row, col, F) for col in zip(*B)] for row in A]


def matvec(A, v, F):
    return [_dot(row, v, F) for row in A]


def _dot(u, v, F):
    acc = F.zero
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def inverse(A, F):
    n = len(A)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    R, piv = row_echelon(aug, F)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def bareiss_determinant(M: Sequence[Sequence]):
    """Fraction-free determinant for matrices over a polynomial ring.

    Entries must support ``*``, ``-``, unary ``-``, ``is_zero()`` and
    ``exquo()`` (exact division).  Row swaps flip the sign.
    """
    n = len(M)
    A = [list(r) for r in M]
    sign = False
    prev = None
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return A[0][0] * 0 if n else None
            A[k], A[swap] = A[swap], A[k]
            sign = not sign
        akk = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = akk * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = v if prev is None else v.exquo(prev)
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign else d
