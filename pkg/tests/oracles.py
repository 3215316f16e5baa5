"""Independent test oracles: dense elimination, brute force, Bareiss.

These deliberately avoid the sparse code paths in raaghom.exact so the
two sides of every check stay independent.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def dense_rank_rationals(rows: list[list[Fraction]]) -> int:
    """Rank over Q by textbook dense Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, n_rows):
            if m[r][col] != 0:
                f = m[r][col] / pv
                for c in range(col, n_cols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
    return rank


def dense_rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank over F_p by textbook dense Gaussian elimination."""
    m = [[v % p for v in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if m[r][col] % p != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        for r in range(rank + 1, n_rows):
            if m[r][col] % p != 0:
                f = m[r][col] * inv % p
                for c in range(col, n_cols):
                    m[r][c] = (m[r][c] - f * m[rank][c]) % p
        rank += 1
    return rank


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[int(v) for v in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def brute_force_has_solution(rows: list[list[int]], b: list[int], p: int, n_cols: int) -> bool:
    """Search all of F_p^n_cols for a solution of m x = b (tiny systems only)."""
    for x in product(range(p), repeat=n_cols):
        ok = True
        for r, row in enumerate(rows):
            acc = sum(row[c] * x[c] for c in range(n_cols)) % p
            if acc != b[r] % p:
                ok = False
                break
        if ok:
            return True
    return False
