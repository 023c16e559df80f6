"""Exact integer and rational linear algebra used throughout the package.

Vectors are tuples, matrices are lists of row tuples.  Lattices are always
given by generating *rows*.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

Vec = tuple
Mat = list


def frac_vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def int_vec(v: Iterable) -> tuple[int, ...]:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(int(x))
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def vec_mat(v: Sequence, M: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    if not M:
        return ()
    ncols = len(M[0])
    return tuple(sum(v[k] * M[k][j] for k in range(len(M))) for j in range(ncols))


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[tuple]:
    return [vec_mat(row, B) for row in A]


def transpose(M: Sequence[Sequence]) -> list[tuple]:
    if not M:
        return []
    return [tuple(M[i][j] for i in range(len(M))) for j in range(len(M[0]))]


def identity(n: int) -> list[tuple[int, ...]]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def vgcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# ---------------------------------------------------------------- rationals


def row_reduce(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    pivots: list[int] = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((k for k in range(r, len(A)) if A[k][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [a - f * b for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(row_reduce(M)[1])


def solve_left(M: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...] | None:
    """Return x with x·M = v over Q, or None.  M must have independent rows."""
    n = len(M)
    if n == 0:
        return () if all(Fraction(x) == 0 for x in v) else None
    # columns of the augmented system are the rows of M
    aug = [list(col) + [v[j]] for j, col in enumerate(zip(*M))]
    R, piv = row_reduce(aug)
    if n in piv:
        return None
    if len(piv) < n:
        raise ValueError("rows are not linearly independent")
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return tuple(x)


def inverse(M: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [tuple(row[n:]) for row in R]


def determinant(M: Sequence[Sequence]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((k for k in range(c, n) if A[k][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for k in range(c + 1, n):
            f = A[k][c] / A[c][c]
            if f:
                A[k] = [a - f * b for a, b in zip(A[k], A[c])]
    return det


# ---------------------------------------------------------------- integers


def hnf(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row Hermite normal form of the lattice generated by ``rows``.

    Output rows are in echelon form, pivots positive, entries above a pivot
    reduced into [0, pivot).  Zero rows are dropped.
    """
    A = [list(int(x) for x in r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        # euclid on column c among rows r..end
        while True:
            nz = [k for k in range(r, len(A)) if A[k][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda k: abs(A[k][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for k in range(r + 1, len(A)):
                if A[k][c]:
                    q = A[k][c] // A[r][c]
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
                    if A[k][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for k in range(r):
                q = A[k][c] // A[r][c]
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
            r += 1
            if r == len(A):
                break
    out = [tuple(row) for row in A[:r]]
    return [row for row in out if any(row)]


def hnf_pivots(H: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in H]


def reduce_mod(v: Sequence[int], H: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of v modulo the lattice with row-HNF basis H.

    Pivot coordinates land in [0, pivot); two vectors differing by an element
    of the lattice reduce to the same result, also when H is not of full rank.
    """
    w = list(int(x) for x in v)
    for row, c in zip(H, hnf_pivots(H)):
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def in_lattice(v: Sequence[int], H: Sequence[Sequence[int]]) -> bool:
    """Membership test against a row-HNF basis."""
    w = list(int(x) for x in v)
    for row, c in zip(H, hnf_pivots(H)):
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def smith(M: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Smith form: returns (U, D, V) with U·M·V = D, U and V unimodular."""
    m = Matrix([[int(x) for x in row] for row in M])
    D, U, V = smith_normal_decomp(m)

    def rows(X):
        return [tuple(int(X[i, j]) for j in range(X.shape[1])) for i in range(X.shape[0])]

    return rows(U), rows(D), rows(V)


def diagonal(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[k][k] for k in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors (absolute values) of an integer matrix."""
    if not M or not M[0]:
        return []
    _, D, _ = smith(M)
    return [abs(d) for d in diagonal(D) if d != 0]


def solve_int_left(P: Sequence[Sequence[int]], target: Sequence[int]):
    """Integer solutions of c·P = target.

    Returns (particular solution or None, basis of the integer kernel).
    """
    nrows = len(P)
    ncols = len(P[0]) if P else len(target)
    if nrows == 0:
        return ((), []) if not any(target) else (None, [])
    U, D, V = smith(P)
    d = diagonal(D)
    rhs = vec_mat(target, V)
    y = [0] * nrows
    for k in range(ncols):
        dk = d[k] if k < len(d) else 0
        if dk == 0:
            if rhs[k] != 0:
                return None, _kernel_rows(U, d)
        else:
            if rhs[k] % dk:
                return None, _kernel_rows(U, d)
            y[k] = rhs[k] // dk
    return vec_mat(y, U), _kernel_rows(U, d)


def _kernel_rows(U, d) -> list[tuple[int, ...]]:
    nz = sum(1 for x in d if x != 0)
    return [U[k] for k in range(nz, len(U))]


def kernel_mod(G: Sequence[Sequence[int]], N: int) -> list[tuple[int, ...]]:
    """Row-HNF basis of {c in Z^r : c·G ≡ 0 mod N} for square G."""
    r = len(G)
    U, D, V = smith(transpose(G))
    # transpose(G) = U^-1 D V^-1, so c·G = (G^T c^T)^T; use G^T c = 0 mod N
    # G^T c ≡ 0  <=>  D V^-1 c ≡ 0  <=>  y = V^-1 c with d_k y_k ≡ 0.
    d = diagonal(D) + [0] * (r - len(diagonal(D)))
    cols = []
    for k in range(r):
        step = N // gcd(N, d[k])
        cols.append(tuple(step * V[i][k] for i in range(r)))
    return hnf(cols)
