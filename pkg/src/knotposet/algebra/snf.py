"""Smith normal form of integer matrices, with optional unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    n, m = len(A), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(m)] for i in range(n)]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal; ``factors`` the nonzero diagonal."""

    factors: tuple
    rank: int
    rows: int
    cols: int
    U: Optional[tuple] = None
    V: Optional[tuple] = None

    def diagonal(self) -> Matrix:
        D = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.factors):
            D[i][i] = d
        return D


def smith_normal_form(A: Sequence[Sequence[int]], cols: Optional[int] = None,
                      transforms: bool = False) -> SmithForm:
    """Invariant factors ``d1 | d2 | ...`` (all > 0) of an integer matrix.

    Pivot: smallest nonzero |entry|, earliest position on ties. ``cols``
    is needed only when ``A`` has no rows.
    """
    M = [list(map(int, r)) for r in A]
    n = len(M)
    m = len(M[0]) if n else (cols or 0)
    for r in M:
        if len(r) != m:
            raise ValueError("matrix is not rectangular")
    U = identity(n) if transforms else None
    V = identity(m) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]
            if U is not None:
                U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        if k:
            for r in M:
                r[dst] += k * r[src]
            if V is not None:
                for r in V:
                    r[dst] += k * r[src]

    def negate_row(i):
        M[i] = [-a for a in M[i]]
        if U is not None:
            U[i] = [-a for a in U[i]]

    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = abs(M[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        done = False
        while not done:
            done = True
            p = M[t][t]
            for i in range(t + 1, n):
                if M[i][t]:
                    add_row(t, i, -(M[i][t] // p))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, m):
                if M[t][j]:
                    add_col(t, j, -(M[t][j] // p))
                    if M[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/col t into the pivot
                cand = [(abs(M[i][t]), i, t) for i in range(t, n) if M[i][t]]
                cand += [(abs(M[t][j]), t, j) for j in range(t, m) if M[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility condition on the rest of the matrix
            p = M[t][t]
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(bad, t, 1)
                done = False
        if M[t][t] < 0:
            negate_row(t)
        t += 1
    factors = tuple(M[i][i] for i in range(min(n, m)) if M[i][i])
    return SmithForm(
        factors=factors,
        rank=len(factors),
        rows=n,
        cols=m,
        U=tuple(map(tuple, U)) if U is not None else None,
        V=tuple(map(tuple, V)) if V is not None else None,
    )


def in_row_lattice(A: Sequence[Sequence[int]], v: Sequence[int], cols: Optional[int] = None) -> bool:
    """Whether integer row vector ``v`` is an integer combination of the rows of ``A``."""
    m = len(v)
    sf = smith_normal_form(A, cols=m if cols is None else cols, transforms=True)
    # x A = v  <=>  (x U^-1) D = v V ; y D = w
    w = [sum(v[k] * sf.V[k][j] for k in range(m)) for j in range(m)]
    for j in range(m):
        d = sf.factors[j] if j < sf.rank else 0
        if d == 0:
            if w[j]:
                return False
        elif w[j] % d:
            return False
    return True


def integer_kernel(A: Sequence[Sequence[int]], cols: int) -> Matrix:
    """Basis (as column vectors, returned as lists) of ``{x in Z^cols : A x = 0}``."""
    sf = smith_normal_form(A, cols=cols, transforms=True)
    return [[sf.V[i][j] for i in range(cols)] for j in range(sf.rank, cols)]
