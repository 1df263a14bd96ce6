from itertools import product

import pytest
from hypothesis import given, strategies as st

from resurgence.errors import NotInSymbolicPowerError
from resurgence.fatpoints import ideal_of, in_symbolic_power, symbolic_power
from resurgence.monomial import contains_monomial, in_power
from resurgence.vertices import (decompose, pairing_reduction, verify_vertex_theorem,
                                 vertex_scheme)


def check_decomposition(f, N, m):
    I = ideal_of(vertex_scheme(N))
    factors = decompose(f, N, m)
    assert len(factors) == m
    assert all(contains_monomial(I, g) for g in factors)
    total = tuple(map(sum, zip(*factors)))
    assert all(x <= y for x, y in zip(total, f))
    assert in_power(f, I, m)
    return factors


def test_vertex_scheme_ideals():
    assert set(ideal_of(vertex_scheme(2)).gens) == {(0, 1, 1), (1, 2, 0), (1, 0, 2)}
    assert len(ideal_of(vertex_scheme(1)).gens) == 1
    # x_i x_j (0 < i < j) and x_0 x_i^2: C(3,2) + 3 generators for N = 3
    gens = set(ideal_of(vertex_scheme(3)).gens)
    assert gens == {(0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1), (1, 2, 0, 0), (1, 0, 2, 0), (1, 0, 0, 2)}


def test_decompose_examples():
    assert sorted(check_decomposition((0, 2, 2), 2, 2)) == [(0, 1, 1), (0, 1, 1)]
    assert sorted(check_decomposition((2, 4, 0), 2, 2)) == [(1, 2, 0), (1, 2, 0)]
    for g in ideal_of(vertex_scheme(2)).gens:
        assert check_decomposition(g, 2, 1) == [g]


def test_decompose_rejects_non_members():
    with pytest.raises(NotInSymbolicPowerError):
        decompose((0, 1, 0), 2, 1)


def test_large_first_coordinate_case():
    # exponents (5, 5) on x1, x2 with m = 3 need e_N capped at m
    check_decomposition((0, 5, 5), 2, 3)


@given(st.integers(2, 4), st.integers(1, 4), st.data())
def test_decompose_random_members(N, m, data):
    Z = vertex_scheme(N)
    f = tuple(data.draw(st.integers(0, 2 * m + 1)) for _ in range(N + 1))
    if in_symbolic_power(f, Z, m):
        check_decomposition(f, N, m)


@given(st.lists(st.integers(0, 6), min_size=2, max_size=5))
def test_pairing_reduction_invariants(raw):
    e = sorted(raw)
    if (sum(e) % 2) or sum(e[:-1]) < e[-1]:
        return
    states = list(pairing_reduction(e))
    assert all(s.invariants_hold() for s in states)
    bs = [s.b for s in states]
    assert all(x > y for x, y in zip(bs, bs[1:]))
    assert len(states) - 1 <= states[0].b
    assert states[-1].b == 0 and all(x == 0 for x in states[-1].e)
    assert len(states[-1].factors) == sum(e) // 2


def test_symbolic_equals_ordinary_powers():
    for N in (2, 3):
        Z = vertex_scheme(N)
        I = ideal_of(Z)
        for m in range(1, 4):
            assert all(in_power(g, I, m) for g in symbolic_power(Z, m).gens)


@pytest.mark.parametrize("N, m_max", [(2, 5), (3, 4), (4, 3)])
def test_verify_vertex_theorem(N, m_max):
    assert verify_vertex_theorem(N, m_max)
