"""Minimal lattice points of up-closed polyhedra {a >= 0 : C a >= d}, C >= 0.

Both Newton polyhedra (facet form) and symbolic polyhedra of coordinate
fat point schemes have this shape, so integral closures and symbolic powers
share one vectorised enumerator.  The last coordinate is never enumerated:
for each prefix it is set to the least feasible value, which is what a
minimal point must use anyway.
"""

from __future__ import annotations

from math import prod

import numpy as np

from .errors import ResourceLimitError

DEFAULT_BOX_CAP = 10**7
_CHUNK = 400_000


def _prefix_chunks(bounds):
    """Yield arrays covering the box prod [0, b_j] in manageable pieces."""
    bounds = list(bounds)
    if not bounds:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    vol = prod(b + 1 for b in bounds)
    if vol <= _CHUNK or len(bounds) == 1:
        grid = np.indices([b + 1 for b in bounds], dtype=np.int64)
        yield grid.reshape(len(bounds), -1).T
        return
    for v in range(bounds[0] + 1):
        for rest in _prefix_chunks(bounds[1:]):
            yield np.hstack([np.full((len(rest), 1), v, dtype=np.int64), rest])


def minimal_lattice_points(C, d, bounds, box_cap: int = DEFAULT_BOX_CAP) -> list:
    """All minimal integer points of {a >= 0 : C a >= d} inside the box [0, bounds].

    The caller guarantees that every minimal point lies in the box.  Returns
    plain tuples of Python ints, unsorted.
    """
    C = np.asarray(C, dtype=object)
    d = np.asarray(d, dtype=object)
    n = len(bounds)
    if C.size == 0:
        return [(0,) * n]
    last = n - 1
    prefix_bounds = list(bounds[:last])
    vol = prod(b + 1 for b in prefix_bounds)
    if vol > box_cap:
        raise ResourceLimitError(f"enumeration box has {vol} points (cap {box_cap})")
    big = int(max(abs(int(x)) for x in C.flat)) * (max(bounds) + 1) * n + max(abs(int(x)) for x in d)
    if big >= 1 << 62:
        raise ResourceLimitError("coefficients too large for exact box enumeration")
    C = C.astype(np.int64)
    d = d.astype(np.int64)
    c_last = C[:, last]
    with_last = c_last > 0
    out = []
    for P in _prefix_chunks(prefix_bounds):
        partial = P @ C[:, :last].T if last else np.zeros((len(P), len(d)), dtype=np.int64)
        need = d[None, :] - partial
        ok = (need[:, ~with_last] <= 0).all(axis=1)
        if with_last.any():
            req = -((-need[:, with_last]) // c_last[with_last])
            a_last = np.maximum(req.max(axis=1), 0)
        else:
            a_last = np.zeros(len(P), dtype=np.int64)
        ok &= a_last <= bounds[last]
        if not ok.any():
            continue
        P, a_last, partial = P[ok], a_last[ok], partial[ok]
        vals = partial + a_last[:, None] * c_last[None, :]
        minimal = np.ones(len(P), dtype=bool)
        for i in range(last):
            shrinkable = P[:, i] > 0
            still_in = ((vals - C[None, :, i]) >= d[None, :]).all(axis=1)
            minimal &= ~(shrinkable & still_in)
        pts = np.hstack([P[minimal], a_last[minimal][:, None]])
        out.extend(tuple(int(x) for x in row) for row in pts)
    return out
