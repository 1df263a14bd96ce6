import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from resurgence.errors import CharacteristicError
from resurgence.modp import (DEFAULT_PRIME, bareiss_rank, check_prime, matmul_mod, nullspace_mod,
                             rank_mod, rref_mod)

matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_ranks_match_sympy(rows):
    ref = sympy.Matrix(rows).rank()
    assert bareiss_rank(rows) == ref
    assert rank_mod(rows) == ref          # small entries: no rank drop modulo a large prime


@given(matrices, st.sampled_from([7, 101, DEFAULT_PRIME]))
def test_rank_mod_small_primes_match_sympy_gf(rows, p):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(p))
    assert rank_mod(rows, p) == dm.rank()


@given(matrices)
def test_nullspace_is_kernel(rows):
    M = np.array(rows, dtype=np.int64)
    K = nullspace_mod(M)
    assert K.shape == (M.shape[1], M.shape[1] - rank_mod(M))
    assert not matmul_mod(M, K).any()


def test_rref_shape():
    R, piv = rref_mod([[2, 4], [1, 2]], 7)
    assert piv == [0] and R.tolist() == [[1, 2]]


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
def test_matmul_mod_exact(n, k, m, data):
    p = DEFAULT_PRIME
    A = [[data.draw(st.integers(0, p - 1)) for _ in range(k)] for _ in range(n)]
    B = [[data.draw(st.integers(0, p - 1)) for _ in range(m)] for _ in range(k)]
    exact = [[sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]
    assert matmul_mod(A, B, p).tolist() == exact


def test_check_prime():
    check_prime(DEFAULT_PRIME)
    for bad in (1, 2, 15, 1 << 31):
        with pytest.raises(CharacteristicError):
            check_prime(bad)
