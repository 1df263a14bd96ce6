"""Newton polyhedra, integral closure and normality of monomial ideals.

Membership in NP(I) can be decided two independent ways: by exact LP
feasibility (:func:`np_contains`) or by the facet inequalities obtained from
the double-description method (:func:`np_contains_facets`).  Enumeration uses
the facet route because it is vectorisable; the LP route is the reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import UndefinedValueError
from .lattice import DEFAULT_BOX_CAP, minimal_lattice_points
from .lp import feasible_point
from .errors import DimensionError
from .monomial import ExponentVector, MonomialIdeal, divides, ideal_in_power, minimalize, power
from .polyhedra import newton_facets


@dataclass(frozen=True)
class FacetValuation:
    """Monomial valuation a -> <normal, a> attached to a facet of NP(I)."""

    normal: tuple
    value_on_ideal: int

    def __call__(self, a) -> int:
        return sum(x * y for x, y in zip(self.normal, a))

    def value(self, I: MonomialIdeal) -> int:
        return min(self(g) for g in I.gens)


@lru_cache(maxsize=256)
def _facets(gens: tuple) -> tuple:
    return tuple(newton_facets(gens))


def _check_point(I: MonomialIdeal, a):
    if len(a) != I.nvars:
        raise DimensionError(f"point {tuple(a)} not in {I.nvars} variables")


def _require_nonzero(I: MonomialIdeal):
    if I.is_zero:
        raise UndefinedValueError("the zero ideal has no Newton polyhedron")


class NewtonPolyhedron:
    """conv(generator exponents) + nonnegative orthant."""

    def __init__(self, I: MonomialIdeal):
        _require_nonzero(I)
        self.ideal = I
        self.nvars = I.nvars
        self.vertex_candidates = I.gens

    @property
    def facets(self) -> tuple:
        return _facets(self.vertex_candidates)

    def contains(self, a, scale: int = 1) -> bool:
        """Membership of a in scale * NP(I), by facet inequalities."""
        return all(sum(x * y for x, y in zip(c, a)) >= scale * v for c, v in self.facets)

    def lp_contains(self, a, scale: int = 1) -> bool:
        return np_contains(self.ideal, a, scale)


def np_contains(I: MonomialIdeal, a: ExponentVector, scale: int = 1) -> bool:
    """Whether a lies in scale * NP(I) = NP(I^scale), decided by exact LP.

    Feasibility of  sum_g lam_g g + w = a,  sum_g lam_g = scale,  lam, w >= 0.
    """
    _require_nonzero(I)
    _check_point(I, a)
    if any(divides(tuple(scale * x for x in g), a) for g in I.gens):
        return True
    n, k = I.nvars, len(I.gens)
    A = [[g[i] for g in I.gens] + [int(j == i) for j in range(n)] for i in range(n)]
    A.append([1] * k + [0] * n)
    return feasible_point(A, list(a) + [scale]) is not None


def np_contains_facets(I: MonomialIdeal, a: ExponentVector, scale: int = 1) -> bool:
    _require_nonzero(I)
    _check_point(I, a)
    return NewtonPolyhedron(I).contains(a, scale)


def facet_valuations(I: MonomialIdeal) -> list:
    """Valuations of the facets of NP(I) that are positive on I.

    Coordinate facets (value 0) are dropped: they do not support I.
    """
    _require_nonzero(I)
    out = [FacetValuation(c, v) for c, v in _facets(I.gens) if v > 0]
    out.sort(key=lambda f: (-f.value_on_ideal, tuple(-x for x in f.normal)))
    return out


def closure_of_power(I: MonomialIdeal, t: int, method: str = "facets",
                     box_cap: int = DEFAULT_BOX_CAP) -> MonomialIdeal:
    """Integral closure of I^t.

    ``method="facets"`` scales the facet inequalities of NP(I) by t and never
    builds I^t; ``method="materialize"`` computes I^t first and takes the
    facets of its own Newton polyhedron.  Both must give the same ideal.
    """
    _require_nonzero(I)
    if t < 1:
        raise ValueError("t must be positive")
    if I.is_unit:
        return I
    if method == "materialize":
        J, scale = power(I, t), 1
    elif method == "facets":
        J, scale = I, t
    else:
        raise ValueError(f"unknown method {method!r}")
    facets = _facets(J.gens)
    C = [list(c) for c, v in facets]
    d = [scale * v for c, v in facets]
    bounds = [scale * m for m in J.max_exponents()]
    pts = minimal_lattice_points(C, d, bounds, box_cap)
    return minimalize(pts, I.nvars)


def integral_closure(I: MonomialIdeal, box_cap: int = DEFAULT_BOX_CAP) -> MonomialIdeal:
    return closure_of_power(I, 1, box_cap=box_cap)


def is_integrally_closed(I: MonomialIdeal) -> bool:
    return integral_closure(I) == I


def is_normal_up_to(I: MonomialIdeal, t_max: int, box_cap: int = DEFAULT_BOX_CAP):
    """Check I^t = closure(I^t) for t = 1..t_max.

    Returns (True, None) or (False, first failing t).
    """
    if t_max < 1:
        raise ValueError("t_max must be positive")
    weights = [(f.normal, f.value_on_ideal) for f in facet_valuations(I)] if not I.is_unit else []
    for t in range(1, t_max + 1):
        closure = closure_of_power(I, t, box_cap=box_cap)
        if not ideal_in_power(closure, I, t, weights=weights):
            return False, t
    return True, None


def briancon_skoda_check(I: MonomialIdeal, t: int, box_cap: int = DEFAULT_BOX_CAP) -> bool:
    """Verify closure(I^{t+N}) ⊆ I^t in N+1 variables.

    A False here would contradict a theorem, i.e. signal a library bug.
    """
    N = I.nvars - 1
    closure = closure_of_power(I, t + N, box_cap=box_cap)
    weights = [(f.normal, f.value_on_ideal) for f in facet_valuations(I)]
    return bool(ideal_in_power(closure, I, t, weights=weights))
