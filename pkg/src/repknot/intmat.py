"""Exact integer linear algebra on lists of Python ints.

Nothing here touches floating point.  Matrices are lists of row lists.
"""
from itertools import product
from math import gcd


def copy_matrix(M):
    return [list(row) for row in M]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def bareiss_det(M):
    """Determinant of a square integer matrix by fraction-free elimination.

    The empty matrix has determinant 1.
    """
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    A = copy_matrix(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and U, V unimodular.

    D is diagonal (as a full matrix) with nonnegative entries, each dividing
    the next.  Works for any m x n integer matrix, including empty ones.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = copy_matrix(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def invariant_factors(M):
    """Diagonal of the Smith form (length min(m, n))."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank_mod_p(M, p):
    """Rank over the prime field F_p."""
    A = [[a % p for a in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if A[r][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        inv = pow(A[rank][col], -1, p)
        A[rank] = [(a * inv) % p for a in A[rank]]
        for r in range(m):
            if r != rank and A[r][col]:
                f = A[r][col]
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def kernel_mod(M, modulus, ncols=None):
    """All integer vectors x (entries in [0, modulus)) with M x = 0 mod modulus.

    Solved through the Smith form: with U M V = D and x = V y, the system
    decouples into d_i y_i = 0 mod modulus.  Solutions come back sorted.
    """
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        choices = [range(modulus)] * ncols
        return sorted(tuple(v) for v in product(*choices))
    D, _, V = smith_normal_form(M)
    ys = []
    for i in range(ncols):
        d = D[i][i] if i < len(D) else 0
        g = gcd(d, modulus)  # gcd(0, n) == n: free coordinate
        step = modulus // g
        ys.append(range(0, modulus, step))
    out = set()
    for y in product(*ys):
        x = tuple(sum(V[r][c] * y[c] for c in range(ncols)) % modulus for r in range(ncols))
        out.add(x)
    return sorted(out)
