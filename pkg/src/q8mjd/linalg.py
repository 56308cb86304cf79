"""Exact solution of square linear systems with integer matrices.

``solve_rational`` is plain Gauss-Jordan over Fractions.  ``solve_integral``
looks for an integer solution: it solves modulo a few word-sized primes with
numpy, lifts by CRT to the symmetric range and checks the lift exactly.  When
no lift checks out it falls back to the rational solve, so the answer is
always exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

# primes below 2^31, so products of two residues fit in int64
_PRIMES = (
    2147483647,
    2147483629,
    2147483587,
    2147483579,
    2147483563,
    2147483549,
    2147483543,
    2147483497,
    2147483489,
    2147483477,
    2147483423,
    2147483399,
)


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[List]:
    """Unique solution of A x = b over Q, or None when A is singular."""
    n = len(A)
    rows = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        if inv != 1:
            prow = rows[col] = [v * inv for v in prow]
        nz = [(j, v) for j, v in enumerate(prow) if v != 0 and j > col]
        for r in range(n):
            if r == col:
                continue
            row = rows[r]
            f = row[col]
            if f == 0:
                continue
            row[col] = Fraction(0)
            for j, v in nz:
                row[j] -= f * v
    return [row[n] for row in rows]


def _solve_mod(A: np.ndarray, b: np.ndarray, q: int) -> Optional[np.ndarray]:
    n = A.shape[0]
    M = np.concatenate([A % q, (b % q).reshape(-1, 1)], axis=1).astype(np.int64)
    for col in range(n):
        nz = np.nonzero(M[col:, col])[0]
        if nz.size == 0:
            return None
        piv = col + int(nz[0])
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        inv = pow(int(M[col, col]), -1, q)
        M[col] = (M[col] * inv) % q
        factors = M[:, col].copy()
        factors[col] = 0
        M = (M - np.outer(factors, M[col]) % q) % q
    return M[:, n]


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def _matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    return [sum(a * v for a, v in zip(row, x) if a) for row in A]


def solve_integral(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[int]]:
    """Integer x with A x = b, or None if the unique rational solution is not integral.

    Also returns None when A is singular; callers here only ask about
    invertible-or-not multiplication matrices, where singular means "no unit".
    """
    A_np = np.array(A, dtype=object)
    b_np = np.array(b, dtype=object)
    residues: List[np.ndarray] = []
    moduli: List[int] = []
    for q in _PRIMES:
        sol = _solve_mod(np.array(A_np % q, dtype=np.int64), np.array(b_np % q, dtype=np.int64), q)
        if sol is None:
            continue
        residues.append(sol)
        moduli.append(q)
        if len(moduli) in (1, 3, 6, len(_PRIMES)):
            candidate = _lift(residues, moduli)
            if _matvec(A, candidate) == list(b):
                return candidate
    exact = solve_rational(A, b)
    if exact is None or any(v.denominator != 1 for v in exact):
        return None
    return [int(v) for v in exact]


def _lift(residues: List[np.ndarray], moduli: List[int]) -> List[int]:
    out = []
    for i in range(len(residues[0])):
        r, m = int(residues[0][i]), moduli[0]
        for res, q in zip(residues[1:], moduli[1:]):
            r = _crt_pair(r, m, int(res[i]), q)
            m *= q
        out.append(r - m if r > m // 2 else r)
    return out
