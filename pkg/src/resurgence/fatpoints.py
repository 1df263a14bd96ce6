"""Fat point schemes supported on coordinate subspaces.

A component (P_S, m_S) with P_S = (x_j : j in S) contributes the condition
sum_{j in S} a_j >= m * m_S to membership of x^a in the m-th symbolic power,
so every symbolic power is the set of lattice points of a polyhedron of the
same shape as a Newton polyhedron in facet form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import floor

from .errors import ParseError, PreconditionError, ResourceLimitError
from .lattice import DEFAULT_BOX_CAP, minimal_lattice_points
from .lp import OPTIMAL, lexmin_optimum, linprog
from .monomial import (DEFAULT_MAX_GENERATORS, MonomialIdeal, alpha, ideal_in_power, intersect,
                       minimalize, power)


@dataclass(frozen=True, order=True)
class CoordinatePrime:
    """The prime (x_j : j in subset)."""

    subset: tuple

    def __post_init__(self):
        sub = tuple(sorted(set(int(j) for j in self.subset)))
        if not sub or sub[0] < 0:
            raise ValueError(f"bad variable subset {self.subset}")
        object.__setattr__(self, "subset", sub)

    @property
    def height(self) -> int:
        return len(self.subset)

    def indicator(self, nvars: int) -> tuple:
        return tuple(int(j in self.subset) for j in range(nvars))


@dataclass(frozen=True)
class MonomialFatScheme:
    """Z = sum m_i p_i with every p_i a coordinate subspace of P^N.

    Components are stored sorted by prime; multiplicity-0 components are
    dropped, repeated primes rejected.
    """

    N: int
    components: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("ambient dimension N must be positive")
        comps = []
        for prime, mult in self.components:
            if not isinstance(prime, CoordinatePrime):
                prime = CoordinatePrime(tuple(prime))
            mult = int(mult)
            if mult < 0:
                raise ValueError("negative multiplicity")
            if prime.subset[-1] > self.N or prime.height > self.N:
                raise ValueError(f"{prime.subset} is not a proper subset of 0..{self.N}")
            if mult:
                comps.append((prime, mult))
        comps.sort()
        if not comps:
            raise ValueError("scheme has no components")
        if len({p for p, _ in comps}) != len(comps):
            raise ValueError("repeated prime in scheme")
        object.__setattr__(self, "components", tuple(comps))

    @property
    def nvars(self) -> int:
        return self.N + 1

    @property
    def big_height(self) -> int:
        return max(p.height for p, _ in self.components)

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.components)

    @property
    def is_points(self) -> bool:
        return all(p.height == self.N for p, _ in self.components)

    def constraint_rows(self) -> list:
        return [p.indicator(self.nvars) for p, _ in self.components]

    def __str__(self):
        return format_scheme(self)


def coordinate_points(N: int, mults=None) -> MonomialFatScheme:
    """The N+1 coordinate vertices of P^N; vertex i is where only x_i is nonzero."""
    mults = [1] * (N + 1) if mults is None else list(mults)
    if len(mults) != N + 1:
        raise ValueError("need one multiplicity per vertex")
    comps = [(CoordinatePrime(tuple(j for j in range(N + 1) if j != i)), m)
             for i, m in enumerate(mults)]
    return MonomialFatScheme(N, tuple(comps))


# -- symbolic powers ----------------------------------------------------------

def prime_power(prime: CoordinatePrime, k: int, nvars: int) -> MonomialIdeal:
    """P^k: every monomial of degree k in the variables of P."""
    gens = []
    for combo in combinations_with_replacement(prime.subset, k):
        a = [0] * nvars
        for j in combo:
            a[j] += 1
        gens.append(tuple(a))
    return minimalize(gens, nvars)


@lru_cache(maxsize=512)
def _symbolic_enumerate(Z: MonomialFatScheme, m: int, box_cap: int) -> MonomialIdeal:
    n = Z.nvars
    C = Z.constraint_rows()
    d = [m * mult for _, mult in Z.components]
    bounds = [max((m * mult for p, mult in Z.components if j in p.subset), default=0)
              for j in range(n)]
    return minimalize(minimal_lattice_points(C, d, bounds, box_cap), n)


def symbolic_power(Z: MonomialFatScheme, m: int, method: str = "enumerate",
                   box_cap: int = DEFAULT_BOX_CAP,
                   max_generators: int = DEFAULT_MAX_GENERATORS) -> MonomialIdeal:
    """I(mZ), the intersection of P_i^{m m_i} over the components of Z.

    ``enumerate`` lists minimal lattice points of the symbolic polyhedron
    directly; ``intersect`` folds pairwise lcm intersections.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if method == "enumerate":
        out = _symbolic_enumerate(Z, m, box_cap)
    elif method == "intersect":
        out = None
        for prime, mult in Z.components:
            P = prime_power(prime, m * mult, Z.nvars)
            out = P if out is None else intersect(out, P)
            if len(out) > max_generators:
                break
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(out) > max_generators:
        raise ResourceLimitError(f"I({m}Z) has more than {max_generators} generators")
    return out


def ideal_of(Z: MonomialFatScheme) -> MonomialIdeal:
    return symbolic_power(Z, 1)


def in_symbolic_power(a, Z: MonomialFatScheme, m: int) -> bool:
    return all(sum(a[j] for j in p.subset) >= m * mult for p, mult in Z.components)


def sdefect_zero(Z: MonomialFatScheme, m: int, method: str = "materialize") -> bool:
    """Whether I(Z)^m = I(mZ).

    ``materialize`` compares canonical generator sets; ``search`` checks
    I(mZ) ⊆ I(Z)^m generator by generator (the other inclusion always holds).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return True
    I = ideal_of(Z)
    S = symbolic_power(Z, m)
    if method == "materialize":
        return power(I, m) == S
    if method == "search":
        return bool(ideal_in_power(S, I, m))
    raise ValueError(f"unknown method {method!r}")


# -- linear and integer programs over the symbolic polyhedron -------------------

def _covering_program(Z: MonomialFatScheme, c, rhs, lower=None, upper=None):
    """Equality-form data for  min c.a  s.t.  rows a >= rhs, lower <= a <= upper.

    Variables are y = a - lower, then one surplus per row, then one slack per
    finite upper bound.  Returns (c', A, b, shift).
    """
    n = Z.nvars
    rows = Z.constraint_rows()
    lower = [0] * n if lower is None else list(lower)
    upper = [None] * n if upper is None else list(upper)
    ub = [j for j in range(n) if upper[j] is not None]
    k, u = len(rows), len(ub)
    A, b = [], []
    for i, row in enumerate(rows):
        A.append(list(row) + [-int(t == i) for t in range(k)] + [0] * u)
        b.append(rhs[i] - sum(x * y for x, y in zip(row, lower)))
    for t, j in enumerate(ub):
        A.append([int(i == j) for i in range(n)] + [0] * k + [int(s == t) for s in range(u)])
        b.append(upper[j] - lower[j])
    return list(c) + [0] * (k + u), A, b, lower


def symbolic_lp(Z: MonomialFatScheme, c, lexmin: bool = False):
    """min <c, a> over the real symbolic polyhedron {a >= 0 : sum_S a >= m_S}.

    Returns (value, optimal point).  With ``lexmin`` the optimal vertex is
    the lexicographically smallest one.
    """
    rhs = [mult for _, mult in Z.components]
    cc, A, b, _ = _covering_program(Z, c, rhs)
    res = lexmin_optimum(cc, A, b, order=range(Z.nvars)) if lexmin else linprog(cc, A, b)
    if res.status != OPTIMAL:  # cannot happen: feasible and bounded below by 0
        raise PreconditionError(f"symbolic LP is {res.status}")
    return res.value, res.x[:Z.nvars]


def waldschmidt(Z: MonomialFatScheme) -> Fraction:
    """Waldschmidt constant, as the optimum of the symbolic-polyhedron LP."""
    return symbolic_lp(Z, [1] * Z.nvars)[0]


def valuation_hat(Z: MonomialFatScheme, v) -> Fraction:
    """Asymptotic value lim v(I(mZ))/m of a monomial valuation."""
    return symbolic_lp(Z, v.normal)[0]


def _alpha_ip(Z: MonomialFatScheme, m: int) -> int:
    """Integer program  min sum a  s.t.  sum_S a >= m m_S, by branch and bound."""
    n = Z.nvars
    rhs = [m * mult for _, mult in Z.components]
    best = None
    stack = [([0] * n, [None] * n)]
    while stack:
        lo, hi = stack.pop()
        cc, A, b, shift = _covering_program(Z, [1] * n, rhs, lo, hi)
        res = linprog(cc, A, b)
        if res.status != OPTIMAL:
            continue
        bound = res.value + sum(shift)
        if best is not None and bound >= best:
            continue
        a = [res.x[j] + shift[j] for j in range(n)]
        frac = next((j for j in range(n) if a[j].denominator != 1), None)
        if frac is None:
            best = int(bound)
            continue
        f = floor(a[frac])
        up_lo = list(lo)
        up_lo[frac] = f + 1
        down_hi = list(hi)
        down_hi[frac] = f
        stack.append((up_lo, hi))
        stack.append((lo, down_hi))
    return best


def alpha_symbolic(Z: MonomialFatScheme, m: int, method: str = "ip") -> int:
    """alpha(I(mZ)), either by integer programming or from the generators."""
    if m < 1:
        raise ValueError("m must be positive")
    if method == "ip":
        return _alpha_ip(Z, m)
    if method == "enumerate":
        return alpha(symbolic_power(Z, m))
    raise ValueError(f"unknown method {method!r}")


# -- text format ----------------------------------------------------------------

def parse_scheme(text: str) -> MonomialFatScheme:
    """Read ``ambient: N`` followed by lines ``prime: j1 j2 ... mult: m``."""
    N = None
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ambient:"):
            try:
                N = int(line.split(":", 1)[1])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            if N < 1:
                raise ParseError("ambient dimension must be positive", lineno)
            continue
        if not line.startswith("prime:"):
            raise ParseError(f"unrecognised line {line!r}", lineno)
        if N is None:
            raise ParseError("component before 'ambient:' header", lineno)
        body = line[len("prime:"):]
        if "mult:" not in body:
            raise ParseError("missing 'mult:'", lineno)
        idx, mult = body.split("mult:", 1)
        try:
            subset = tuple(int(t) for t in idx.split())
            mult = int(mult)
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if not subset:
            raise ParseError("empty prime", lineno)
        if any(j < 0 or j > N for j in subset) or len(set(subset)) > N:
            raise ParseError(f"prime {subset} is not a proper subset of 0..{N}", lineno)
        if mult < 1:
            raise ParseError("multiplicity must be positive", lineno)
        comps.append((CoordinatePrime(subset), mult))
    if N is None:
        raise ParseError("missing 'ambient:' header")
    if not comps:
        raise ParseError("scheme has no components")
    try:
        return MonomialFatScheme(N, tuple(comps))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_scheme(Z: MonomialFatScheme) -> str:
    lines = [f"ambient: {Z.N}"]
    for prime, mult in Z.components:
        lines.append(f"prime: {' '.join(map(str, prime.subset))} mult: {mult}")
    return "\n".join(lines) + "\n"


def all_primes(N: int, height: int):
    """Every coordinate prime of the given height in P^N."""
    return [CoordinatePrime(s) for s in combinations(range(N + 1), height)]
