"""Containment oracles and the resurgence searches built on them.

Every search returns witnesses that can be re-checked independently with
:func:`verify_witness`; every exact value comes with the reason it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, lcm

import numpy as np
from .errors import PreconditionError, ResourceLimitError
from .fatpoints import (MonomialFatScheme, alpha_symbolic, ideal_of, in_symbolic_power,
                        sdefect_zero, symbolic_lp, symbolic_power, valuation_hat, waldschmidt)
from .monomial import (MonomialIdeal, format_monomial, ideal_in_power, in_power, power)
from .newton import closure_of_power, facet_valuations, is_normal_up_to, np_contains
from .polyhedra import MAX_FACET_DIMENSION

SYMBOLIC_NOT_IN_POWER = "symbolic-not-in-power"
CLOSURE_NOT_IN_POWER = "closure-not-in-power"
SYMBOLIC_NOT_IN_CLOSURE = "symbolic-not-in-closure"
FLAVORS = (SYMBOLIC_NOT_IN_POWER, CLOSURE_NOT_IN_POWER, SYMBOLIC_NOT_IN_CLOSURE)

DEFAULT_WINDOW_CAP = 5000


@dataclass(frozen=True)
class ContainmentWitness:
    """A monomial in the source ideal (indexed by m) but not in the target (indexed by r).

    Witnesses are falsy, so ``if symbolic_in_power(Z, m, r):`` reads naturally.
    """

    m: int
    r: int
    monomial: tuple
    flavor: str

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown witness flavor {self.flavor!r}")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.m, self.r)

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"m": self.m, "r": self.r, "monomial": format_monomial(self.monomial),
                "flavor": self.flavor}


def verify_witness(w: ContainmentWitness, I: MonomialIdeal,
                   Z: MonomialFatScheme | None = None) -> bool:
    """Recheck a witness from scratch: source membership and target failure."""
    a = w.monomial
    if w.flavor == CLOSURE_NOT_IN_POWER:
        return np_contains(I, a, w.m) and not in_power(a, I, w.r)
    if Z is None:
        raise ValueError("symbolic witnesses need the scheme")
    if not in_symbolic_power(a, Z, w.m):
        return False
    if w.flavor == SYMBOLIC_NOT_IN_POWER:
        return not in_power(a, I, w.r)
    return not np_contains(I, a, w.r)


@lru_cache(maxsize=256)
def _weights(I: MonomialIdeal) -> tuple:
    """Facet inequalities used to prune power-membership searches."""
    if I.nvars > MAX_FACET_DIMENSION or I.is_unit:
        return ()
    return tuple((f.normal, f.value_on_ideal) for f in facet_valuations(I))


@lru_cache(maxsize=256)
def is_normal(I: MonomialIdeal) -> bool:
    """Normality of I, certified by closedness of I^t for t up to nvars - 1."""
    return is_normal_up_to(I, max(I.nvars - 1, 1))[0]


def _first_outside_scaled(I: MonomialIdeal, gens, r: int):
    """First of ``gens`` (in order) outside r NP(I), by the facet inequalities."""
    C = np.array([c for c, _ in _weights(I)], dtype=np.int64)
    v = np.array([v for _, v in _weights(I)], dtype=np.int64)
    G = np.array(gens, dtype=np.int64)
    bad = np.flatnonzero(((G @ C.T) < r * v).any(axis=1))
    return None if bad.size == 0 else gens[int(bad[0])]


# -- containment oracles ---------------------------------------------------------

def symbolic_in_power(Z: MonomialFatScheme, m: int, r: int):
    """I(mZ) ⊆ I(Z)^r ?  True, or the first generator of I(mZ) that fails."""
    if m < 1 or r < 1:
        raise ValueError("m and r must be positive")
    I = ideal_of(Z)
    S = symbolic_power(Z, m)
    if _weights(I) and is_normal(I):
        # I^r is integrally closed, so r NP(I) decides membership exactly
        g = _first_outside_scaled(I, S.gens, r)
        return True if g is None else ContainmentWitness(m, r, g, SYMBOLIC_NOT_IN_POWER)
    res = ideal_in_power(S, I, r, weights=_weights(I))
    return True if res else ContainmentWitness(m, r, res.witness, SYMBOLIC_NOT_IN_POWER)


def symbolic_in_closure(Z: MonomialFatScheme, m: int, r: int):
    """I(mZ) ⊆ closure(I(Z)^r) ?  Decided generator by generator with the exact LP."""
    if m < 1 or r < 1:
        raise ValueError("m and r must be positive")
    I = ideal_of(Z)
    for g in symbolic_power(Z, m).gens:
        if not np_contains(I, g, r):
            return ContainmentWitness(m, r, g, SYMBOLIC_NOT_IN_CLOSURE)
    return True


def closure_in_power(I: MonomialIdeal, m: int, r: int):
    """closure(I^m) ⊆ I^r ?"""
    res = ideal_in_power(closure_of_power(I, m), I, r, weights=_weights(I))
    return True if res else ContainmentWitness(m, r, res.witness, CLOSURE_NOT_IN_POWER)


# -- rho_int and K ------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    """Outcome of a sup-of-ratios search over closure(I^m) ⊄ I^r.

    ``exact`` means ``value`` is the true supremum; otherwise ``value`` is the
    best lower bound and ``upper`` an inclusive upper bound.  ``certificate``
    says why: "normal", "exhaustive", "briancon-skoda" or "probe".
    """

    value: Fraction
    exact: bool
    certificate: str
    upper: Fraction | None = None
    scope: int | None = None
    witness: ContainmentWitness | None = None


def _check_nontrivial(I: MonomialIdeal):
    if I.is_zero or I.is_unit:
        raise PreconditionError("ideal must be nonzero and proper")


def _ratio_search(I: MonomialIdeal, r_probe: int, plus_one: bool) -> SearchResult:
    """Shared search for rho_int (plus_one False) and K (plus_one True).

    Only pairs with m < r + N can fail (Briançon-Skoda), so for ratio c > 1
    a better pair needs r < N / (c - 1): once any witness is known, the rest
    of the search is finite.
    """
    _check_nontrivial(I)
    if r_probe < 1:
        raise ValueError("r_probe must be positive")
    N = I.nvars - 1
    one = Fraction(1)
    if is_normal(I):
        # all powers up to N integrally closed forces normality in N+1 variables
        return SearchResult(one, True, "normal")
    shift = 1 if plus_one else 0
    m_floor = 0 if plus_one else 1     # smallest m - r that can beat ratio 1

    def largest_failure(r, m_min):
        # closure(I^m) shrinks as m grows, so scan m downward
        for m in range(r + N - 1, m_min - 1, -1):
            w = closure_in_power(I, m, r)
            if not w:
                return w
        return None

    best = None
    r = 1
    while best is None and r <= r_probe:
        best = largest_failure(r, r + m_floor)
        r += 1
    if best is None:
        if N <= 1 and not plus_one:
            return SearchResult(one, True, "briancon-skoda")
        upper = Fraction(r_probe + N + shift, r_probe + 1)
        return SearchResult(one, False, "probe", upper=max(upper, one), scope=r_probe)

    def value(w):
        return Fraction(w.m + shift, w.r)

    c = value(best)
    r = 1
    while r < N / (c - 1):
        m_min = floor(c * r) + 1 - shift
        w = largest_failure(r, max(m_min, r + m_floor))
        if w is not None and value(w) > c:
            best, c = w, value(w)
        r += 1
    return SearchResult(c, True, "exhaustive", witness=best)


def rho_int_search(I: MonomialIdeal, r_probe: int = 12) -> SearchResult:
    """sup { m/r : closure(I^m) ⊄ I^r } joined with 1."""
    return _ratio_search(I, r_probe, plus_one=False)


def K_search(I: MonomialIdeal, r_probe: int = 12) -> SearchResult:
    """sup { (m+1)/r : closure(I^m) ⊄ I^r }."""
    return _ratio_search(I, r_probe, plus_one=True)


# -- asymptotic resurgence -------------------------------------------------------------

@dataclass(frozen=True)
class RhoHatResult:
    value: Fraction
    certified: bool
    normal: tuple
    valuation_value: int
    valuation_hat: Fraction
    ratios: tuple                      # (normal, v(I), v_hat) for every facet
    witnesses: tuple = ()
    ceiling_pairs: int = 0
    failures: tuple = ()


def rho_hat(Z: MonomialFatScheme, grid_cap: int = 8, witness_scales: int = 3) -> RhoHatResult:
    """Asymptotic resurgence as the largest facet ratio v(I) / v_hat.

    Certified when (i) scaled LP optima of the maximising facet give verified
    witnesses I(mZ) ⊄ closure(I^r) with m/r approaching the value, and (ii)
    I(mZ) ⊆ closure(I^r) holds by exact LP for every m/r above the value with
    m, r <= grid_cap.
    """
    I = ideal_of(Z)
    ratios = []
    best = None
    for v in facet_valuations(I):
        vh = valuation_hat(Z, v)
        ratio = Fraction(v.value_on_ideal) / vh
        ratios.append((v.normal, v.value_on_ideal, vh))
        if best is None or ratio > best[0]:
            best = (ratio, v, vh)
    value, v, vh = best
    failures = []

    # (i) witnesses from the lexicographically least optimal vertex
    _, point = symbolic_lp(Z, v.normal, lexmin=True)
    k = lcm(*(x.denominator for x in point))
    witnesses = []
    for t in range(1, witness_scales + 1):
        m = k * t
        a = tuple(int(x * m) for x in point)
        r = floor(m / value) + 1
        w = ContainmentWitness(m, r, a, SYMBOLIC_NOT_IN_CLOSURE)
        if not verify_witness(w, I, Z) or value - w.ratio > value * value / (m + value):
            failures.append(f"witness {w.to_dict()} did not verify")
        witnesses.append(w)

    # (ii) no non-containment above the value on the grid
    pairs = 0
    for r in range(1, grid_cap + 1):
        m = floor(value * r) + 1
        if m > grid_cap:
            continue
        pairs += 1
        res = symbolic_in_closure(Z, m, r)
        if not res:
            failures.append(f"I({m}Z) not in closure(I^{r}) at ratio above the value")
    return RhoHatResult(value, not failures, v.normal, v.value_on_ideal, vh, tuple(ratios),
                        tuple(witnesses), pairs, tuple(failures))


# -- resurgence brackets ------------------------------------------------------------------

@dataclass(frozen=True)
class RhoBracket:
    """rho is ``exact`` when known, else lo <= rho < hi_exclusive."""

    lo: Fraction
    hi_exclusive: Fraction | None
    exact: Fraction | None = None
    witness: ContainmentWitness | None = None
    pairs_checked: int = 0

    def to_dict(self) -> dict:
        if self.exact is not None:
            return {"exact": frac_str(self.exact)}
        hi = None if self.hi_exclusive is None else frac_str(self.hi_exclusive)
        return {"lo": frac_str(self.lo), "hi_exclusive": hi}


def frac_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _worst_in_row(Z, r, m_values):
    """Largest failing m among m_values for fixed r, using monotonicity in m."""
    if not m_values:
        return None, 0
    low = m_values[0]
    if symbolic_in_power(Z, low, r):
        return None, 1
    checks = 1
    for m in reversed(m_values):
        checks += 1
        w = symbolic_in_power(Z, m, r)
        if not w:
            return w, checks
    raise AssertionError("unreachable: the smallest m already failed")


def _sweep(Z, rows, window_cap):
    total = sum(len(ms) for _, ms in rows)
    if total > window_cap:
        raise ResourceLimitError(
            f"window has {total} pairs (cap {window_cap}); raise epsilon")
    best, checks = None, 0
    for r, ms in rows:
        w, c = _worst_in_row(Z, r, ms)
        checks += c
        if w is not None and (best is None or w.ratio > best.ratio):
            best = w
    return best, checks


def dd_window(Z: MonomialFatScheme, rho_hat_value, epsilon, window_cap: int = DEFAULT_WINDOW_CAP) -> RhoBracket:
    """Exact rho or a bracket [rho_hat, rho_hat + epsilon).

    A non-containment I(sZ) ⊄ I^r forces s/(r+N) < rho_hat, so every pair
    with s/r >= rho_hat + epsilon that could fail has r < N rho_hat / epsilon.
    All of them are checked.
    """
    if isinstance(rho_hat_value, RhoHatResult):
        if not rho_hat_value.certified:
            raise PreconditionError("refusing to run the window on an uncertified rho_hat")
        rho_hat_value = rho_hat_value.value
    rh = Fraction(rho_hat_value)
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    N = Z.N
    rows = []
    r = 1
    while r < N * rh / eps:
        lo = ceil(r * (rh + eps))
        hi = ceil(rh * (r + N)) - 1          # largest s with s < rh (r + N)
        ms = list(range(lo, hi + 1))
        if ms:
            rows.append((r, ms))
        r += 1
    best, checks = _sweep(Z, rows, window_cap)
    if best is not None:
        return RhoBracket(best.ratio, None, best.ratio, best, checks)
    return RhoBracket(rh, rh + eps, None, None, checks)


@dataclass(frozen=True)
class DenkertEstimate:
    a: int
    s: int
    A: int
    B: int
    epsilon: Fraction
    rho_lower: Fraction
    rho_hat_upper: Fraction
    rho_upper_if_window_clear: Fraction
    accuracy: Fraction
    residual_window: tuple
    lower_witness: ContainmentWitness
    resolved: bool = False
    exact: Fraction | None = None
    witness: ContainmentWitness | None = None

    def bracket(self) -> RhoBracket | None:
        """The rho bracket, once the residual window has been checked."""
        if not self.resolved:
            return None
        if self.exact is not None:
            return RhoBracket(self.exact, None, self.exact, self.witness)
        return RhoBracket(self.rho_lower, self.rho_upper_if_window_clear)


def denkert_precondition(Z: MonomialFatScheme, a: int, t_check: int) -> bool:
    """Whether I(atZ) = I(aZ)^t for t = 1..t_check."""
    base = symbolic_power(Z, a)
    return all(power(base, t) == symbolic_power(Z, a * t) for t in range(2, t_check + 1))


def denkert_estimate(Z: MonomialFatScheme, a: int, s: int, epsilon=Fraction(1, 12),
                     t_check: int = 3, resolve: bool = False,
                     window_cap: int = DEFAULT_WINDOW_CAP) -> DenkertEstimate:
    """Bracket rho from the single containment I(AZ) ⊆ I^B, A = a s N."""
    if a < 1 or s < 1:
        raise ValueError("a and s must be positive")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not denkert_precondition(Z, a, t_check):
        raise PreconditionError(f"I({a}tZ) = I({a}Z)^t fails for some t <= {t_check}")
    N = Z.N
    A = a * s * N
    B = a * s
    if not symbolic_in_power(Z, A, B):
        raise PreconditionError(f"I({A}Z) is not contained in I^{B}")
    while True:
        w = symbolic_in_power(Z, A, B + 1)
        if not w:
            break
        B += 1
    q = Fraction(A, B)
    R = B * ceil(Fraction(A) / (B * eps))
    rows = []
    for r in range(1, R):
        lo = ceil(r * (q + eps))
        hi = min(N * r, A * ceil(Fraction(r, B))) - 1   # above this the chain gives containment
        if lo <= hi:
            rows.append((r, list(range(lo, hi + 1))))
    residual = tuple((m, r) for r, ms in rows for m in ms)
    est = dict(a=a, s=s, A=A, B=B, epsilon=eps, rho_lower=Fraction(A, B + 1), rho_hat_upper=q,
               rho_upper_if_window_clear=q + eps, accuracy=Fraction(N, a * s + 1) + eps,
               residual_window=residual, lower_witness=w)
    if not resolve:
        return DenkertEstimate(**est)
    best, _ = _sweep(Z, rows, window_cap)
    return DenkertEstimate(**est, resolved=True,
                           exact=None if best is None else best.ratio, witness=best)


# -- criteria chain and conjectures ---------------------------------------------------------

@dataclass(frozen=True)
class MT3Report:
    """Criteria (a)-(d) as True/False/None (None: not decided); (e) is never computed."""

    a: bool
    b: bool | None
    c: bool | None
    d: bool
    e: str
    m_max: int
    chain_ok: bool
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "e": self.e,
                "m_max": self.m_max, "chain_ok": self.chain_ok}


def rho_is_one(rh: RhoHatResult | None, bracket: RhoBracket | None,
               rho_int: SearchResult | None) -> bool | None:
    """Decide rho = 1 from already computed pieces, when they suffice."""
    if bracket is not None:
        if bracket.exact is not None:
            return bracket.exact == 1
        if bracket.lo > 1:
            return False
    if rh is not None and rh.certified:
        if rh.value > 1:
            return False
        # rho_hat = rho_int = 1 forces rho = 1
        if rho_int is not None and rho_int.exact and rho_int.value == 1:
            return True
    return None


def mt3_criteria(Z: MonomialFatScheme, m_max: int = 4, rh: RhoHatResult | None = None,
                 bracket: RhoBracket | None = None,
                 rho_int: SearchResult | None = None) -> MT3Report:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    I = ideal_of(Z)
    a = all(sdefect_zero(Z, m) for m in range(1, m_max + 1))
    if rh is None:
        rh = rho_hat(Z)
    if rho_int is None:
        rho_int = rho_int_search(I)
    b = rho_is_one(rh, bracket, rho_int)
    c = (rh.value == 1) if rh.certified else None
    d = all(closure_of_power(I, m) == symbolic_power(Z, m) for m in range(1, m_max + 1))
    e = "implied by (d)" if d else "not determined"
    chain = [a, b, c, d]
    chain_ok = not any(x is True and y is False for x, y in zip(chain, chain[1:]))
    return MT3Report(a, b, c, d, e, m_max, chain_ok)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str                 # "pass", "fail" or "n/a"
    instances: int
    failures: tuple = ()

    def to_dict(self) -> dict:
        return {"status": self.status, "instances": self.instances,
                "failures": list(self.failures)}


def _result(name, instances, failures):
    return CheckResult(name, "fail" if failures else "pass", instances, tuple(failures))


def grifo_check(Z: MonomialFatScheme, r_max: int = 4) -> CheckResult:
    h = Z.big_height
    failures = []
    for r in range(2, r_max + 1):
        w = symbolic_in_power(Z, h * r - h + 1, r)
        if not w:
            failures.append(w.to_dict())
    return _result("grifo", max(0, r_max - 1), failures)


def slack_power_check(Z: MonomialFatScheme, r_max: int = 3) -> CheckResult:
    """I(rNZ) ⊆ M^{r(N-1)} I(Z)^r via degree slack in the power search."""
    I = ideal_of(Z)
    N = Z.N
    failures = []
    for r in range(1, r_max + 1):
        res = ideal_in_power(symbolic_power(Z, r * N), I, r, r * (N - 1), weights=_weights(I))
        if not res:
            failures.append({"m": r * N, "r": r, "slack": r * (N - 1),
                             "monomial": format_monomial(res.witness)})
    return _result("slack_power", r_max, failures)


def chudnovsky_check(Z: MonomialFatScheme, m_max: int = 6) -> CheckResult:
    N = Z.N
    ah = waldschmidt(Z)
    failures = []
    for m in range(1, m_max + 1):
        bound = Fraction(alpha_symbolic(Z, m) + N - 1, m + N - 1)
        if ah < bound:
            failures.append({"m": m, "waldschmidt": frac_str(ah), "bound": frac_str(bound)})
    return _result("chudnovsky", m_max, failures)


def valuation_chudnovsky_check(Z: MonomialFatScheme) -> CheckResult:
    N = Z.N
    if N < 2:
        return CheckResult("valuation_chudnovsky", "n/a", 0)
    failures = []
    vals = facet_valuations(ideal_of(Z))
    for v in vals:
        vh = valuation_hat(Z, v)
        if Fraction(v.value_on_ideal + 1, N) > vh:
            failures.append({"normal": list(v.normal), "value": v.value_on_ideal,
                             "hat": frac_str(vh)})
    return _result("valuation_chudnovsky", len(vals), failures)


def conjecture_checks(Z: MonomialFatScheme, r_max: int = 4, m_max: int = 6,
                      slack_r_max: int | None = None) -> dict:
    """The four finite checks; failures carry their data and are never dropped."""
    slack_r_max = min(r_max, 3) if slack_r_max is None else slack_r_max
    return {
        "grifo": grifo_check(Z, r_max),
        "slack_power": slack_power_check(Z, slack_r_max),
        "chudnovsky": chudnovsky_check(Z, m_max),
        "valuation_chudnovsky": valuation_chudnovsky_check(Z),
    }
