"""Exact double-description method for pointed polyhedral cones.

Used to turn the vertex description of a Newton polyhedron into its facet
inequalities.  Everything is integer arithmetic; rays are kept primitive.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import PreconditionError, UnsupportedDimensionError

MAX_FACET_DIMENSION = 6


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = tuple(x // g for x in v)
    return tuple(v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _independent_rows(A, d):
    """Indices of d linearly independent rows of A (greedy, exact)."""
    chosen, reduced = [], []  # reduced rows in echelon form with their pivot columns
    for idx, row in enumerate(A):
        v = [Fraction(x) for x in row]
        for pcol, prow in reduced:
            if v[pcol]:
                f = v[pcol] / prow[pcol]
                v = [a - f * b for a, b in zip(v, prow)]
        pcol = next((j for j, x in enumerate(v) if x), None)
        if pcol is None:
            continue
        chosen.append(idx)
        reduced.append((pcol, v))
        if len(chosen) == d:
            break
    return chosen


def _inverse_columns(M):
    """Columns of M^{-1}, each scaled to a primitive integer vector."""
    d = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(M)]
    for col in range(d):
        piv = next(r for r in range(col, d) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    cols = []
    for j in range(d):
        col = [aug[i][d + j] for i in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append(_primitive(tuple(int(x * den) for x in col)))
    return cols


def extreme_rays(A: Sequence[Sequence[int]]) -> list:
    """Extreme rays of the pointed cone {y : A y >= 0}.

    Raises PreconditionError when the cone is not pointed (rank of A below the
    ambient dimension).
    """
    rows = list(dict.fromkeys(tuple(int(x) for x in r) for r in A if any(r)))
    if not rows:
        raise PreconditionError("empty constraint system")
    d = len(rows[0])
    start = _independent_rows(rows, d)
    if len(start) < d:
        raise PreconditionError("cone is not pointed")
    order = start + [i for i in range(len(rows)) if i not in set(start)]
    rows = [rows[i] for i in order]

    full = (1 << d) - 1
    rays = []  # (vector, bitmask of tight processed constraints)
    for j, vec in enumerate(_inverse_columns(rows[:d])):
        rays.append((vec, full & ~(1 << j)))

    for k in range(d, len(rows)):
        a = rows[k]
        pos, zero, neg = [], [], []
        for ray in rays:
            s = _dot(a, ray[0])
            (pos if s > 0 else neg if s < 0 else zero).append((ray, s))
        if not neg:
            rays = [(v, z | (1 << k)) if s == 0 else (v, z) for (v, z), s in pos + zero]
            continue
        new = []
        masks = [z for v, z in rays]
        for (p, zp), sp in pos:
            for (q, zq), sq in neg:
                common = zp & zq
                if bin(common).count("1") < d - 2:
                    continue
                if any(m & common == common and m != zp and m != zq for m in masks):
                    continue
                v = _primitive(tuple(sp * y - sq * x for x, y in zip(p, q)))
                new.append((v, common | (1 << k)))
        rays = ([(v, z) for (v, z), s in pos]
                + [(v, z | (1 << k)) for (v, z), s in zero]
                + new)
    return sorted({v for v, z in rays})


def newton_facets(points: Sequence[Sequence[int]]) -> list:
    """Facet inequalities <c, a> >= v of conv(points) + nonnegative orthant.

    Returns (c, v) pairs with c a primitive nonnegative integer vector; the
    coordinate facets (value 0) are included.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise PreconditionError("no points")
    n = len(pts[0])
    if n > MAX_FACET_DIMENSION:
        raise UnsupportedDimensionError(
            f"facet enumeration supports at most {MAX_FACET_DIMENSION} variables, got {n}")
    rows = [tuple(int(i == j) for j in range(n)) + (0,) for i in range(n)]
    rows += [tuple(p) + (-1,) for p in pts]
    facets = []
    for ray in extreme_rays(rows):
        c, v = ray[:n], ray[n]
        if any(c):
            facets.append((c, v))
    facets.sort(key=lambda f: (-f[1], f[0]))
    return facets
