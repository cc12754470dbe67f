from itertools import combinations
from math import gcd

from hypothesis import given, strategies as st

from treebraid.snf import invariant_factors, smith_diagonal


def det(M):
    """Fraction-free Bareiss determinant."""
    M = [row[:] for row in M]
    n, sign, prev = len(M), 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def determinantal_factors(A):
    """Invariant factors as ratios of gcds of k x k minors."""
    rows, cols = len(A), len(A[0]) if A else 0
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[A[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        d.append(g)
    return [d[i] // d[i - 1] for i in range(1, len(d))]


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@given(matrices)
def test_smith_against_minors(A):
    assert sorted(smith_diagonal([row[:] for row in A])) == sorted(determinantal_factors(A))


@given(matrices)
def test_sparse_agrees_with_dense(A):
    rows = [{j: v for j, v in enumerate(row) if v} for row in A]
    assert sorted(invariant_factors(rows, len(A[0]))) == sorted(determinantal_factors(A))


def test_torsion_example():
    assert sorted(invariant_factors([{0: 2, 1: 4}, {0: 6, 1: 8}], 2)) == [2, 4]
