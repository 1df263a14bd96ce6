from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog as scipy_linprog

from resurgence.engine import (CLOSURE_NOT_IN_POWER, SYMBOLIC_NOT_IN_CLOSURE,
                               SYMBOLIC_NOT_IN_POWER, ContainmentWitness, K_search,
                               closure_in_power, conjecture_checks, dd_window, denkert_estimate,
                               denkert_precondition, mt3_criteria, rho_hat, rho_int_search,
                               symbolic_in_closure, symbolic_in_power, verify_witness)
from resurgence.errors import PreconditionError, ResourceLimitError
from resurgence.fatpoints import MonomialFatScheme, coordinate_points, ideal_of, symbolic_power
from resurgence.monomial import contains_monomial, ideal_in_power, minimalize, power
from resurgence.newton import closure_of_power, facet_valuations
from resurgence.vertices import vertex_scheme

from conftest import FLEET
from test_monomial import CUBES, TRI

STAR = coordinate_points(2)
VERT = vertex_scheme(2)
POINT = MonomialFatScheme(2, (((1, 2), 1),))


# -- containment oracles ----------------------------------------------------------

def test_symbolic_in_power_examples():
    w = symbolic_in_power(STAR, 6, 5)
    assert not w and w.monomial == (3, 3, 3) and w.flavor == SYMBOLIC_NOT_IN_POWER
    assert w.ratio == Fraction(6, 5)
    assert symbolic_in_power(STAR, 4, 3)
    assert all(symbolic_in_power(VERT, m, m) for m in range(1, 6))


def test_symbolic_in_closure_examples():
    w = symbolic_in_closure(STAR, 6, 5)
    assert not w and w.monomial == (3, 3, 3) and w.flavor == SYMBOLIC_NOT_IN_CLOSURE
    assert symbolic_in_closure(STAR, 4, 3)
    for Z in FLEET.values():
        for r in range(1, 4):
            assert symbolic_in_closure(Z, Z.N * r, r)


def test_witness_flavor_and_falsiness():
    w = ContainmentWitness(2, 1, (2, 2, 2), CLOSURE_NOT_IN_POWER)
    assert not w
    assert verify_witness(w, CUBES)
    assert not verify_witness(ContainmentWitness(2, 1, (1, 0, 0), CLOSURE_NOT_IN_POWER), CUBES)
    with pytest.raises(ValueError):
        ContainmentWitness(1, 1, (0, 0, 0), "bogus")


@pytest.mark.parametrize("name", sorted(FLEET))
def test_oracles_consistent_on_grid(name):
    """Failing the closure test forces failing the power test, and witnesses re-verify."""
    Z = FLEET[name]
    I = ideal_of(Z)
    grid = 8 if Z.N == 2 else 5
    for m in range(1, grid + 1):
        for r in range(1, grid + 1):
            p = symbolic_in_power(Z, m, r)
            c = symbolic_in_closure(Z, m, r)
            if not c:
                assert not p
                assert verify_witness(c, I, Z)
            if not p:
                assert verify_witness(p, I, Z)
                # differential check against the generic power search
                slow = ideal_in_power(symbolic_power(Z, m), I, r)
                assert not slow and slow.witness == p.monomial
            else:
                assert ideal_in_power(symbolic_power(Z, m), I, r)


def test_closure_in_power():
    w = closure_in_power(CUBES, 2, 1)
    assert not w and w.monomial == (2, 2, 2)
    assert closure_in_power(TRI, 3, 3)


# -- rho_int and K ----------------------------------------------------------------

def brute_ratio(I, plus_one, bound=6):
    best = None
    for m in range(1, bound + 1):
        cl = closure_of_power(I, m, method="materialize")
        for r in range(1, bound + 1):
            P = power(I, r)
            if not all(contains_monomial(P, g) for g in cl.gens):
                q = Fraction(m + plus_one, r)
                best = q if best is None else max(best, q)
    return best


def test_rho_int_examples():
    res = rho_int_search(CUBES)
    assert res.exact and res.value == 2
    assert res.witness.monomial == (2, 2, 2) and (res.witness.m, res.witness.r) == (2, 1)
    assert brute_ratio(CUBES, 0) == 2
    tri = rho_int_search(TRI)
    assert tri.exact and tri.value == 1 and tri.certificate == "normal"
    principal = rho_int_search(minimalize([(1, 2, 0)]))
    assert principal.exact and principal.value == 1


def test_K_examples():
    k = K_search(CUBES)
    assert k.exact and k.value == 3
    assert brute_ratio(CUBES, 1) == 3
    assert K_search(TRI).value == 1
    assert brute_ratio(TRI, 1) == 1


def test_non_normal_ideal_search():
    I = minimalize([(4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)])
    res = rho_int_search(I, r_probe=6)
    assert res.value >= brute_ratio(I, 0, bound=5)
    if res.witness is not None:
        assert verify_witness(res.witness, I)


# -- rho_hat ------------------------------------------------------------------------

def float_rho_hat(Z):
    """max over facets of v(I)/v_hat with v_hat from scipy's LP."""
    best = 0.0
    for f in facet_valuations(ideal_of(Z)):
        A_ub, b_ub = [], []
        for P, mult in Z.components:
            A_ub.append([-1.0 if i in P.subset else 0.0 for i in range(Z.nvars)])
            b_ub.append(-float(mult))
        res = scipy_linprog(np.array(f.normal, dtype=float), A_ub=A_ub, b_ub=b_ub, method="highs")
        best = max(best, f.value_on_ideal / res.fun)
    return best


@pytest.mark.parametrize("name", sorted(FLEET))
def test_rho_hat_against_independent_oracles(name):
    Z = FLEET[name]
    rh = rho_hat(Z)
    assert rh.certified
    assert abs(float(rh.value) - float_rho_hat(Z)) < 1e-9
    # every non-containment in the closure has ratio below rho_hat, and some come close
    ratios = [Fraction(m, r) for m in range(1, 13) for r in range(1, 10)
              if not symbolic_in_closure(Z, m, r)]
    assert all(q < rh.value for q in ratios)
    if rh.value > 1:
        assert max(ratios) > rh.value - Fraction(1, 4)
    for w in rh.witnesses:
        assert verify_witness(w, ideal_of(Z), Z)


def test_rho_hat_examples():
    assert rho_hat(STAR).value == Fraction(4, 3)
    assert rho_hat(VERT).value == 1
    assert rho_hat(POINT).value == 1


# -- windows ------------------------------------------------------------------------

def brute_rho_lower(Z, r_max, m_max):
    """Largest failing ratio on a grid, using the generic power search only."""
    I = ideal_of(Z)
    best = Fraction(0)
    for r in range(1, r_max + 1):
        for m in range(1, m_max + 1):
            if not ideal_in_power(symbolic_power(Z, m), I, r):
                best = max(best, Fraction(m, r))
    return best


def test_dd_window_examples():
    assert dd_window(STAR, Fraction(4, 3), Fraction(1, 3)).to_dict() == {"lo": "4/3", "hi_exclusive": "5/3"}
    b = dd_window(STAR, rho_hat(STAR), Fraction(1, 12))
    assert (b.lo, b.hi_exclusive, b.exact) == (Fraction(4, 3), Fraction(17, 12), None)
    # independent grid: nothing fails at ratio >= 17/12 and the best failure sits below 4/3
    grid = brute_rho_lower(STAR, 14, 24)
    assert grid < Fraction(4, 3)
    v = dd_window(VERT, 1, Fraction(1, 4))
    assert (v.lo, v.hi_exclusive) == (1, Fraction(5, 4))


def test_dd_window_guards():
    uncertified = rho_hat(STAR).__class__(Fraction(4, 3), False, (), 0, Fraction(0), ())
    with pytest.raises(PreconditionError):
        dd_window(STAR, uncertified, Fraction(1, 12))
    with pytest.raises(ResourceLimitError):
        dd_window(STAR, Fraction(4, 3), Fraction(1, 100), window_cap=50)
    with pytest.raises(ValueError):
        dd_window(STAR, Fraction(4, 3), 0)


def test_denkert_examples():
    e1 = denkert_estimate(STAR, 2, 1)
    assert (e1.A, e1.B, e1.rho_lower, e1.rho_hat_upper) == (4, 3, 1, Fraction(4, 3))
    e2 = denkert_estimate(STAR, 2, 2)
    assert (e2.A, e2.B, e2.rho_lower, e2.rho_hat_upper) == (8, 6, Fraction(8, 7), Fraction(4, 3))
    for e in (e1, e2):
        assert e.B >= e.a * e.s and e.rho_lower <= e.rho_hat_upper
        assert verify_witness(e.lower_witness, ideal_of(STAR), STAR)
    v = denkert_estimate(VERT, 1, 1, resolve=True)
    assert (v.A, v.B) == (2, 2) and v.rho_hat_upper == 1


def test_denkert_precondition():
    assert denkert_precondition(STAR, 2, 3)
    assert not denkert_precondition(STAR, 1, 3)
    assert not denkert_precondition(coordinate_points(3), 1, 3)


@pytest.mark.parametrize("name", sorted(FLEET))
def test_denkert_and_dd_intersect(name):
    Z = FLEET[name]
    rh = rho_hat(Z)
    eps = Fraction(1, 4)
    dd = dd_window(Z, rh, eps)
    for a in (1, 2):
        if not denkert_precondition(Z, a, 3):
            continue
        d = denkert_estimate(Z, a, 1, eps, resolve=True).bracket()
        lo = max(dd.lo, d.lo)
        tops = [x.exact if x.exact is not None else x.hi_exclusive for x in (dd, d)]
        closed = any(x.exact is not None for x in (dd, d))
        assert lo <= min(tops) if closed else lo < min(tops)


@pytest.mark.parametrize("name", sorted(FLEET))
def test_rho_below_h_when_rho_hat_below_h(name):
    Z = FLEET[name]
    rh = rho_hat(Z)
    h = Z.big_height
    if rh.value < h:
        b = dd_window(Z, rh, (h - rh.value) / 2)
        top = b.exact if b.exact is not None else b.hi_exclusive
        assert top <= h and (b.exact is None or b.exact < h)


@pytest.mark.parametrize("name", sorted(FLEET))
def test_rho_int_at_most_half_N(name):
    Z = FLEET[name]
    assert Z.N >= 2
    assert rho_int_search(ideal_of(Z)).value <= Fraction(Z.N, 2)


# -- criteria and conjectures ---------------------------------------------------------

def test_mt3_examples():
    v = mt3_criteria(VERT, 4)
    assert (v.a, v.b, v.c, v.d) == (True, True, True, True) and v.chain_ok
    s = mt3_criteria(STAR, 4)
    assert (s.a, s.b, s.c, s.d) == (False, False, False, False) and s.chain_ok
    p = mt3_criteria(POINT, 4)
    assert (p.a, p.b, p.c, p.d) == (True, True, True, True)


@pytest.mark.parametrize("name", sorted(FLEET))
def test_mt3_chain_never_inverted(name):
    r = mt3_criteria(FLEET[name], 4)
    chain = [r.a, r.b, r.c, r.d]
    for x, y in zip(chain, chain[1:]):
        assert not (x is True and y is False)
    assert r.chain_ok


def test_conjecture_examples():
    checks = conjecture_checks(STAR, 4, 6)
    assert {k: c.status for k, c in checks.items()} == {
        "grifo": "pass", "slack_power": "pass", "chudnovsky": "pass", "valuation_chudnovsky": "pass"}
    assert symbolic_in_power(STAR, 3, 2)
    assert conjecture_checks(coordinate_points(1))["valuation_chudnovsky"].status == "n/a"


@pytest.mark.parametrize("name", sorted(FLEET))
def test_conjectures_on_fleet(name):
    Z = FLEET[name]
    checks = conjecture_checks(Z, 4, 6, 3)
    for c in checks.values():
        # a failure would be a finding; its data must re-verify before it is reported
        for f in c.failures:
            if "monomial" in f:
                pytest.fail(f"finding on {name}: {c.name} {f}")
        assert c.status in ("pass", "n/a"), f"finding on {name}: {c.name}"
