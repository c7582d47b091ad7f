"""Exact positive-semidefiniteness test for rational symmetric matrices.

Symmetric Gaussian elimination (LDL^T) with diagonal pivoting.  When the
matrix is not PSD, the elimination steps are replayed backwards to lift a
direction ``v`` with ``v^T M v < 0`` to the original coordinates.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def quadratic_form(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Fraction:
    n = len(v)
    total = Fraction(0)
    for i in range(n):
        if v[i]:
            row = M[i]
            total += v[i] * sum((row[j] * v[j] for j in range(n) if v[j]), Fraction(0))
    return total


def ldl_psd(M: Sequence[Sequence[Fraction]]) -> tuple[bool, list[Fraction] | None]:
    """Return ``(True, None)`` if M is PSD, else ``(False, v)`` with ``v^T M v < 0``.

    Pivots on the largest remaining diagonal entry; a negative diagonal or a
    nonzero off-diagonal entry in an all-zero-diagonal block ends the
    factorization with a certificate.
    """
    n = len(M)
    A = [[Fraction(a) for a in row] for row in M]
    active = list(range(n))
    steps: list[tuple[int, Fraction, list[tuple[int, Fraction]]]] = []

    def lift(u: dict[int, Fraction]) -> list[Fraction]:
        for p, piv, col in reversed(steps):
            u[p] = -sum((a * u.get(i, 0) for i, a in col), Fraction(0)) / piv
        return [u.get(i, Fraction(0)) for i in range(n)]

    while active:
        neg = [i for i in active if A[i][i] < 0]
        if neg:
            return False, lift({neg[0]: Fraction(1)})
        p = max(active, key=lambda i: (A[i][i], -i))
        if A[p][p] == 0:
            for i in active:
                for j in active:
                    if i < j and A[i][j] != 0:
                        return False, lift({i: Fraction(1), j: Fraction(-1 if A[i][j] > 0 else 1)})
            return True, None
        piv = A[p][p]
        active.remove(p)
        col = [(i, A[i][p]) for i in active if A[i][p] != 0]
        for i, aip in col:
            r = aip / piv
            Ai = A[i]
            Ap = A[p]
            for j in active:
                if Ap[j]:
                    Ai[j] -= r * Ap[j]
        steps.append((p, piv, col))
    return True, None
