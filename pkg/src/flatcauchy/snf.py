"""Smith normal form over the integers, tracking column operations.

Only the column transform is kept: for a relation matrix A (rows are
relations), ``Z^n / rowspace(A)`` has coordinates ``x ↦ x @ V`` reduced
modulo the invariant factors.
"""

from __future__ import annotations


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A, n_cols=None):
    """Return ``(diag, V, Vinv)`` with ``U @ A @ V`` diagonal for some
    unimodular U.

    ``diag`` has length ``n_cols``; entries past the rank are 0. Nonzero
    entries are positive and each divides the next.
    """
    A = [list(map(int, row)) for row in A]
    m = len(A)
    n = n_cols if n_cols is not None else (len(A[0]) if A else 0)
    V = _identity(n)
    Vinv = _identity(n)

    def swap_cols(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_col(dst, src, q):
        # column dst += q * column src
        if q == 0:
            return
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        rs, rd = Vinv[src], Vinv[dst]
        for k in range(n):
            rs[k] -= q * rd[k]

    def add_row(dst, src, q):
        if q == 0:
            return
        rd, rs = A[dst], A[src]
        for k in range(n):
            rd[k] += q * rs[k]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            break
        _, i, j = pivot
        A[t], A[i] = A[i], A[t]
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    A[t], A[i] = A[i], A[t]
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
        t += 1
    diag = [A[i][i] if i < m else 0 for i in range(n)]
    return diag, V, Vinv


def invariant_factors(A, n_cols=None):
    diag, _, _ = smith_normal_form(A, n_cols)
    return diag
