"""Exact dense linear algebra over Q and over rational functions.

Matrices are lists of row lists.  Rank over Q goes through fraction-free
Bareiss elimination on an integer-cleared copy (row scaling preserves rank);
matrices containing RatFun entries use straightforward fraction-free
elimination over the function field, guarded by a column cap since symbolic
entry swell is real.

Kernel bases are returned in reduced row echelon form of the solution space
(free columns parameterized in order), so output is reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ResourceBound, ShapeMismatch
from .scalars import RatFun, sc_is_zero

SYMBOLIC_DIM_LIMIT = 64


def is_symbolic(M) -> bool:
    return any(isinstance(x, RatFun) and not x.is_constant() for row in M for x in row)


def mat_mul(A, B):
    if A and B and len(A[0]) != len(B):
        raise ShapeMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = Fraction(0)
            for p in range(k):
                a = Ai[p]
                if sc_is_zero(a):
                    continue
                acc = acc + a * B[p][j]
            row.append(acc)
        out.append(row)
    return out


def mat_is_zero(M) -> bool:
    return all(sc_is_zero(x) for row in M for x in row)


def stack(mats):
    if not mats:
        return []
    w = len(mats[0][0]) if mats[0] else None
    out = []
    for M in mats:
        for row in M:
            if w is None:
                w = len(row)
            if len(row) != w:
                raise ShapeMismatch("stacked matrices disagree on column count")
            out.append(list(row))
    return out


def _int_rows(M):
    """Scale each row by the lcm of entry denominators: integer rows, same rank."""
    out = []
    for row in M:
        dens = [x.denominator for x in row]
        m = math.lcm(*dens) if dens else 1
        out.append([int(x * m) for x in row])
    return out


def _bareiss_rank(M) -> int:
    M = [row[:] for row in M]
    n = len(M)
    m = len(M[0]) if n else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        for r in range(row + 1, n):
            if all(c == 0 for c in M[r]):
                continue
            factor = M[r][col]
            for c in range(col, m):
                M[r][c] = (p * M[r][c] - factor * M[row][c]) // prev
        prev = p
        row += 1
        rank += 1
        if row == n:
            break
    return rank


def _field_rank(M) -> int:
    """Gaussian elimination over the entry field (used for RatFun matrices)."""
    n = len(M)
    m = len(M[0]) if n else 0
    if m > SYMBOLIC_DIM_LIMIT and is_symbolic(M):
        raise ResourceBound(f"symbolic elimination limited to {SYMBOLIC_DIM_LIMIT} columns")
    M = [row[:] for row in M]
    rank = 0
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if not sc_is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        for r in range(row + 1, n):
            f = M[r][col]
            if sc_is_zero(f):
                continue
            scale = f / p
            M[r] = [M[r][c] - scale * M[row][c] for c in range(m)]
        row += 1
        rank += 1
        if row == n:
            break
    return rank


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    if is_symbolic(M):
        return _field_rank(M)
    return _bareiss_rank(_int_rows(M))


def rref(M):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    n = len(M)
    m = len(M[0]) if n else 0
    M = [row[:] for row in M]
    pivots = []
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, n):
            if not sc_is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        M[row] = [x / p for x in M[row]]
        for r in range(n):
            if r == row:
                continue
            f = M[r][col]
            if sc_is_zero(f):
                continue
            M[r] = [M[r][c] - f * M[row][c] for c in range(m)]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return M[:row], pivots


def kernel_basis(M, ncols=None):
    """Basis of the right kernel, reduced echelon in the free variables."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
                for i in range(ncols)]
    if is_symbolic(M) and ncols > SYMBOLIC_DIM_LIMIT:
        raise ResourceBound(f"symbolic elimination limited to {SYMBOLIC_DIM_LIMIT} columns")
    R, pivots = rref(M)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis
