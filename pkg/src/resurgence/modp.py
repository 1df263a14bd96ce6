"""Exact linear algebra over F_p (numpy int64) and over Q (Python integers).

p is at most 2^31 - 1, so a product of two reduced entries fits in int64 and
each elimination step can be done as one vectorised update.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from .errors import CharacteristicError

DEFAULT_PRIME = 2**31 - 1
_LIMB = 1 << 16


def check_prime(p: int):
    if p < 3 or p >= 1 << 31 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
        raise CharacteristicError(f"{p} is not an odd prime below 2^31")


def rref_mod(M, p: int = DEFAULT_PRIME):
    """Reduced row echelon form mod p; returns (R, pivot columns)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r, c:] = R[r, c:] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit, c:] = (R[hit, c:] - col[hit, None] * R[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank_mod(M, p: int = DEFAULT_PRIME) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref_mod(M, p)[1])


def nullspace_mod(M, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Basis of {x : M x = 0} mod p as the columns of an (ncols, k) array."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref_mod(M, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, f]) % p
    return K


def matmul_mod(A, B, p: int = DEFAULT_PRIME) -> np.ndarray:
    """A @ B mod p without int64 overflow (B is split into 16-bit limbs)."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    lo, hi = B % _LIMB, B // _LIMB
    step = 1 << 14   # inner products of (2^31 x 2^16) terms stay below 2^61
    out_lo = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    out_hi = np.zeros_like(out_lo)
    for s in range(0, A.shape[1], step):
        out_lo = (out_lo + A[:, s:s + step] @ lo[s:s + step]) % p
        out_hi = (out_hi + A[:, s:s + step] @ hi[s:s + step]) % p
    return (out_hi * _LIMB + out_lo) % p


# -- rational mode ----------------------------------------------------------------

def bareiss_rank(M) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = [[int(x) for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == rows:
            break
    return r

