"""Exact two-phase simplex over the rationals.

Problems are in standard equality form: minimise c.x subject to A x = b, x >= 0.
All arithmetic is done with :class:`fractions.Fraction`; Bland's rule prevents
cycling, so every call terminates with an exact certificate-quality answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(T, obj, basis, row, col):
    prow = T[row]
    piv = prow[col]
    if piv != 1:
        inv = 1 / piv
        for j in range(len(prow)):
            if prow[j]:
                prow[j] *= inv
    nz = [j for j in range(len(prow)) if prow[j]]
    for i, other in enumerate(T):
        if i != row:
            f = other[col]
            if f:
                for j in nz:
                    other[j] -= f * prow[j]
    f = obj[col]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
    basis[row] = col


def _run(T, obj, basis, allowed):
    """Bland's-rule simplex on a tableau whose basis is already feasible.

    ``obj`` holds reduced costs with obj[-1] = -(current objective).
    Returns False if unbounded.
    """
    while True:
        col = next((j for j in allowed if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[col]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, obj, basis, best[1], col)


def _phase_one(A, b):
    m = len(A)
    n = len(A[0]) if m else 0
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        T.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    _run(T, obj, basis, range(n + m))
    if obj[-1] != 0:
        return None
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, obj, basis, i, col)
        i += 1
    for row in T:
        del row[n:n + m]
    return T, basis, n


def linprog(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise c.x subject to A x = b, x >= 0, exactly."""
    start = _phase_one(A, b)
    if start is None:
        return LPResult(INFEASIBLE)
    T, basis, n = start
    c = [Fraction(v) for v in c]
    obj = c + [Fraction(0)]
    for i, row in enumerate(T):
        cb = c[basis[i]]
        if cb:
            for j in range(n + 1):
                obj[j] -= cb * row[j]
    if not _run(T, obj, basis, range(n)):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, row in enumerate(T):
        x[basis[i]] = row[-1]
    return LPResult(OPTIMAL, -obj[-1], tuple(x))


def feasible_point(A: Sequence[Sequence], b: Sequence):
    """A point of {x >= 0 : A x = b}, or None if the set is empty."""
    start = _phase_one(A, b)
    if start is None:
        return None
    T, basis, n = start
    x = [Fraction(0)] * n
    for i, row in enumerate(T):
        x[basis[i]] = row[-1]
    return tuple(x)


def lexmin_optimum(c, A, b, order=None) -> LPResult:
    """Optimal vertex that is lexicographically smallest in the variables ``order``.

    Solves the LP, then successively minimises each listed variable over the
    optimal face.  Degenerate problems thus get a reproducible optimiser.
    """
    res = linprog(c, A, b)
    if res.status != OPTIMAL:
        return res
    n = len(c)
    order = range(n) if order is None else order
    A = [list(row) for row in A] + [list(c)]
    b = list(b) + [res.value]
    x = res.x
    for j in order:
        unit = [0] * n
        unit[j] = 1
        sub = linprog(unit, A, b)
        A.append(unit)
        b.append(sub.value)
        x = sub.x
    return LPResult(OPTIMAL, res.value, x)
