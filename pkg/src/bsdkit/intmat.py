"""Exact integer linear algebra: Hermite and Smith normal forms.

Matrices are lists of rows of Python ints.  All transforms returned are
unimodular, so every identity below holds exactly over ZZ.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    n, k = len(A), len(A[0])
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def mat_vec(A: Matrix, v: List[int]) -> List[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A and A[0] else []


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _addmul_col(A, dst, src, c):
    if c:
        for row in A:
            row[dst] += c * row[src]


def _combine_cols(A, V, i, j, a, b, c, d):
    """(col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j), on A and V."""
    for M in (A, V):
        for row in M:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y


def hermite_normal_form(A: Matrix) -> Tuple[Matrix, Matrix]:
    """Column-style HNF: returns (H, V) with A·V = H, V unimodular.

    H is in column echelon form: pivots positive, zero entries above each
    pivot, entries to the right of a pivot in its row reduced into
    [0, pivot); zero columns pushed to the far right.
    """
    if not A:
        return [], []
    n, m = len(A), len(A[0])
    H = [row[:] for row in A]
    V = identity(m)
    col = 0
    for row_i in range(n):
        if col >= m:
            break
        # clear row_i across columns col..m-1 down to a single pivot
        pivot = None
        for j in range(col, m):
            if H[row_i][j]:
                pivot = j
                break
        if pivot is None:
            continue
        for j in range(pivot + 1, m):
            if not H[row_i][j]:
                continue
            a, b = H[row_i][pivot], H[row_i][j]
            g = gcd(a, b)
            # unimodular 2-column transform sending (a, b) -> (g, 0)
            x, y = _bezout(a, b)
            _combine_cols_pair(H, V, pivot, j, x, y, -(b // g), a // g)
        if pivot != col:
            _swap_cols(H, pivot, col)
            _swap_cols(V, pivot, col)
        if H[row_i][col] < 0:
            for M in (H, V):
                for row in M:
                    row[col] = -row[col]
        # reduce entries to the LEFT of the pivot in this row
        p = H[row_i][col]
        for j in range(col):
            q = H[row_i][j] // p
            if q:
                _addmul_col(H, j, col, -q)
                _addmul_col(V, j, col, -q)
        col += 1
    return H, V


def _bezout(a: int, b: int) -> Tuple[int, int]:
    """x, y with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _combine_cols_pair(A, V, i, j, a, b, c, d):
    """(col_i, col_j) <- (a·col_i + b·col_j, c·col_i + d·col_j)."""
    for M in (A, V):
        for row in M:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y


def kernel_basis(A: Matrix) -> Matrix:
    """Columns spanning {x : A·x = 0}, returned as an m×r matrix in HNF."""
    if not A or not A[0]:
        m = len(A[0]) if A else 0
        return identity(m)
    H, V = hermite_normal_form(A)
    m = len(A[0])
    ker_cols = [j for j in range(m) if all(H[i][j] == 0 for i in range(len(A)))]
    if not ker_cols:
        return [[] for _ in range(m)]
    K = [[V[i][j] for j in ker_cols] for i in range(m)]
    KH, _ = hermite_normal_form(K)
    return KH


def smith_normal_form(A: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Returns (D, U, V) with U·A·V = D diagonal, d_1 | d_2 | ..., d_i >= 0."""
    n = len(A)
    m = len(A[0]) if A else 0
    D = [row[:] for row in A]
    U = identity(n)
    V = identity(m)
    t = 0
    while t < min(n, m):
        # find a nonzero pivot in the trailing block
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            D[t], D[i0] = D[i0], D[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            _swap_cols(D, t, j0)
            _swap_cols(V, t, j0)
        while True:
            # improve the pivot until it divides its whole row and column;
            # each bezout step strictly shrinks |pivot|, so this terminates
            improved = False
            for i in range(t + 1, n):
                a, b = D[t][t], D[i][t]
                if b % a:
                    x, y = _bezout(a, b)
                    g = gcd(a, b)
                    rt, ri = D[t], D[i]
                    ut, ui = U[t], U[i]
                    D[t] = [x * p + y * q for p, q in zip(rt, ri)]
                    D[i] = [-(b // g) * p + (a // g) * q
                            for p, q in zip(rt, ri)]
                    U[t] = [x * p + y * q for p, q in zip(ut, ui)]
                    U[i] = [-(b // g) * p + (a // g) * q
                            for p, q in zip(ut, ui)]
                    improved = True
            for j in range(t + 1, m):
                a, b = D[t][t], D[t][j]
                if b % a:
                    x, y = _bezout(a, b)
                    g = gcd(a, b)
                    _combine_cols_pair(D, V, t, j, x, y, -(b // g), a // g)
                    improved = True
            if improved:
                continue
            # pivot divides everything: plain elimination, column first
            # (row t untouched), then row (column t stays zero)
            a = D[t][t]
            for i in range(t + 1, n):
                q = D[i][t] // a
                if q:
                    D[i] = [p - q * r for p, r in zip(D[i], D[t])]
                    U[i] = [p - q * r for p, r in zip(U[i], U[t])]
            for j in range(t + 1, m):
                q = D[t][j] // a
                if q:
                    _addmul_col(D, j, t, -q)
                    _addmul_col(V, j, t, -q)
            if all(D[i][t] == 0 for i in range(t + 1, n)) and \
                    all(D[t][j] == 0 for j in range(t + 1, m)):
                break
        # make the pivot divide the rest of the block
        a = D[t][t]
        bad = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if D[i][j] % a:
                    bad = i
                    break
            if bad:
                break
        if bad is not None:
            for p in range(m):
                D[t][p] += D[bad][p]
            for p in range(n):
                U[t][p] += U[bad][p]
            continue  # redo this pivot
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def invariant_factors(A: Matrix) -> List[int]:
    """Nonzero diagonal entries of the Smith form (d_1 | d_2 | ...)."""
    D, _, _ = smith_normal_form(A)
    out = []
    for t in range(min(len(D), len(D[0]) if D else 0)):
        if D[t][t]:
            out.append(D[t][t])
    return out


def inverse_unimodular(U: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (exact, via SNF transforms)."""
    n = len(U)
    D, P, Q = smith_normal_form(U)
    for t in range(n):
        if D[t][t] != 1:
            raise ValueError("matrix is not unimodular")
    # P·U·Q = I  =>  U^{-1} = Q·P
    return mat_mul(Q, P)


def solve_integer(A: Matrix, v: List[int]) -> Optional[List[int]]:
    """An integer solution x of A·x = v, or None if none exists."""
    if not A:
        return []
    n, m = len(A), len(A[0])
    D, U, V = smith_normal_form(A)
    w = mat_vec(U, v)
    y = [0] * m
    for i in range(n):
        d = D[i][i] if i < min(n, m) else 0
        if d:
            if w[i] % d:
                return None
            y[i] = w[i] // d
        elif w[i]:
            return None
    return mat_vec(V, y)
