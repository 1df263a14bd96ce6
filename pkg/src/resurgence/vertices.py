"""Z = p_1 + ... + p_N + 2 p_{N+1} at the coordinate vertices of P^N.

Here I(Z)^m = I(mZ) for every m, and the proof is constructive: any monomial
of I(mZ) can be split into m monomials of I(Z).  :func:`decompose` carries out
that splitting and :func:`verify_vertex_theorem` checks it generator by
generator against a direct comparison of the two ideals.

Vertex p_j (1 <= j <= N) is the point where only x_j is nonzero; p_{N+1} is
the point where only x_0 is nonzero, and it carries multiplicity 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotInSymbolicPowerError
from .fatpoints import CoordinatePrime, MonomialFatScheme, ideal_of, in_symbolic_power, \
    sdefect_zero, symbolic_power
from .monomial import contains_monomial, divides


def vertex_scheme(N: int) -> MonomialFatScheme:
    if N < 1:
        raise ValueError("N must be positive")
    comps = [(CoordinatePrime(tuple(i for i in range(N + 1) if i != j)), 1) for j in range(1, N + 1)]
    comps.append((CoordinatePrime(tuple(range(1, N + 1))), 2))
    return MonomialFatScheme(N, tuple(comps))


@dataclass
class DecompositionState:
    """Working exponents e over x_1..x_N during the pairing reduction.

    ``b`` is e_1 + ... + e_{N-1}; ``factors`` holds the (j, k) index pairs
    emitted so far (1-based, in sorted coordinates).
    """

    e: list
    step: int = 0
    factors: list = field(default_factory=list)

    @property
    def b(self) -> int:
        return sum(self.e[:-1])

    def invariants_hold(self) -> bool:
        e = self.e
        return (all(x >= 0 for x in e) and all(x <= y for x, y in zip(e, e[1:]))
                and (self.b + e[-1]) % 2 == 0 and self.b >= e[-1])


def pairing_reduction(e):
    """Yield the successive states of the reduction, starting from e itself.

    Each step removes one x_j and one x_k, choosing j < k as large as
    possible subject to keeping e nondecreasing.
    """
    state = DecompositionState(list(e))
    yield state
    N = len(state.e)
    while state.b > 0:
        e = list(state.e)
        top = e[N - 2]
        j = e.index(top)              # 0-based position of the first entry equal to e_{N-1}
        k = N - 1 if e[N - 1] > top else j + 1
        e[j] -= 1
        e[k] -= 1
        state = DecompositionState(e, state.step + 1, state.factors + [(j + 1, k + 1)])
        yield state


def _pairs_to_vectors(pairs, perm, N):
    out = []
    for j, k in pairs:
        v = [0] * (N + 1)
        v[perm[j - 1]] += 1
        v[perm[k - 1]] += 1
        out.append(tuple(v))
    return out


def decompose(f, N: int, m: int) -> list:
    """Split x^f in I(mZ) into m monomials of I(Z) whose product divides x^f."""
    f = tuple(int(x) for x in f)
    if len(f) != N + 1:
        raise ValueError(f"expected {N + 1} exponents")
    if m < 1:
        raise ValueError("m must be positive")
    Z = vertex_scheme(N)
    if not in_symbolic_power(f, Z, m):
        raise NotInSymbolicPowerError(f"{f} is not in I({m}Z)")
    if N == 1:
        return [(1, 2)] * m

    # sort x_1..x_N by exponent; perm[i] is the original index of sorted slot i+1
    perm = sorted(range(1, N + 1), key=lambda i: f[i])
    a0 = f[0]
    a = [f[i] for i in perm]
    b = sum(a[:-1])

    if b >= m:
        # choose e_N, then trim e_1..e_{N-1} greedily from the top so that
        # b' + e_N = 2m with e_N <= b'
        eN = min(max(a[-2], 2 * m - b), m)
        remaining = 2 * m - eN
        e = [0] * N
        e[-1] = eN
        for i in range(N - 2, -1, -1):
            e[i] = min(a[i], eN, remaining)
            remaining -= e[i]
        *_, final = pairing_reduction(e)
        return _pairs_to_vectors(final.factors, perm, N)

    # b < m: pair every x_i (i < N) with x_N, then use (x_0 x_N^2)^(m-b)
    pairs = [(i + 1, N) for i in range(N - 1) for _ in range(a[i])]
    out = _pairs_to_vectors(pairs, perm, N)
    cube = [0] * (N + 1)
    cube[0] = 1
    cube[perm[-1]] = 2
    assert a0 >= m - b
    return out + [tuple(cube)] * (m - b)


def verify_vertex_theorem(N: int, m_max: int) -> bool:
    """Decompose every minimal generator of I(mZ), m <= m_max, and compare
    I(Z)^m with I(mZ) directly; both routes must say the same thing."""
    Z = vertex_scheme(N)
    I = ideal_of(Z)
    for m in range(1, m_max + 1):
        by_decomposition = True
        for g in symbolic_power(Z, m).gens:
            factors = decompose(g, N, m)
            total = tuple(map(sum, zip(*factors)))
            if (len(factors) != m or not divides(total, g)
                    or not all(contains_monomial(I, h) for h in factors)):
                by_decomposition = False
                break
        if by_decomposition != sdefect_zero(Z, m) or not by_decomposition:
            return False
    return True
