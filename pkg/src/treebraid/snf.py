"""Invariant factors of sparse integer matrices.

Unit pivots are eliminated first on the sparse representation (cubical
boundary matrices are almost entirely +-1), choosing short rows in short
columns to limit fill-in.  Whatever survives goes through a dense Smith
normal form with partial pivoting on magnitude.
"""

from __future__ import annotations

from math import gcd


def invariant_factors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero invariant factors (positive, divisibility chain) of the matrix."""
    R = {i: dict(r) for i, r in enumerate(rows) if r}
    cols: dict[int, set[int]] = {}
    for i, r in R.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    ones = 0

    progress = True
    while progress and R:
        progress = False
        for i in sorted(R, key=lambda i: len(R[i])):
            if i not in R:
                continue
            row = R[i]
            units = [j for j, v in row.items() if v in (1, -1)]
            if not units:
                continue
            j = min(units, key=lambda j: len(cols[j]))
            u = row[j]
            for k in list(cols[j]):
                if k == i:
                    continue
                rk = R[k]
                f = rk[j] * u
                for jj, v in row.items():
                    nv = rk.get(jj, 0) - f * v
                    if nv:
                        if jj not in rk:
                            cols[jj].add(k)
                        rk[jj] = nv
                    else:
                        rk.pop(jj, None)
                        cols[jj].discard(k)
                if not rk:
                    del R[k]
            for jj in row:
                cols[jj].discard(i)
            del R[i]
            ones += 1
            progress = True

    rest = dense_invariant_factors(R, cols)
    return [1] * ones + rest


def dense_invariant_factors(R: dict[int, dict[int, int]], cols: dict[int, set[int]]) -> list[int]:
    live_cols = sorted(j for j, s in cols.items() if s)
    if not R or not live_cols:
        return []
    cidx = {j: t for t, j in enumerate(live_cols)}
    A = []
    for r in R.values():
        line = [0] * len(live_cols)
        for j, v in r.items():
            line[cidx[j]] = v
        A.append(line)
    return smith_diagonal(A)


def smith_diagonal(A: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a dense integer matrix."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility: pivot must divide the rest of the block
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                i, _ = bad
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                done = False
        diag.append(abs(A[t][t]))
        t += 1
    # normalize to a divisibility chain
    for a in range(len(diag)):
        for b in range(a + 1, len(diag)):
            g = gcd(diag[a], diag[b])
            if g:
                diag[a], diag[b] = g, diag[a] * diag[b] // g
    return diag
