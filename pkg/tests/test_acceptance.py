"""Acceptance criteria 1-7, each at its stated tolerance and time budget."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from resurgence.cli import main
from resurgence.engine import (conjecture_checks, dd_window, denkert_estimate, mt3_criteria,
                               rho_hat, rho_int_search, verify_witness)
from resurgence.fatpoints import coordinate_points, ideal_of, symbolic_power, waldschmidt
from resurgence.monomial import (alpha, contains_monomial, ideal_in_power, in_power, minimalize,
                                 power)
from resurgence.newton import closure_of_power, np_contains, np_contains_facets
from resurgence.points_p2 import alpha_p2, build_ex3, order_certificate, vanishing_order_on_line
from resurgence.vertices import verify_vertex_theorem

from conftest import ACCEPTANCE, FLEET, FLEET_DIR, monomials_up_to


@contextmanager
def criterion(key, budget, note=""):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE[key] = ("FAIL", time.perf_counter() - start, budget, note)
        print(f"criterion {key}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    ACCEPTANCE[key] = ("PASS" if ok else "FAIL (time)", elapsed, budget, note)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL (time)'} in {elapsed:.2f}s")
    assert ok, f"criterion {key} took {elapsed:.1f}s, budget {budget}s"


def test_1_cubes_rho_int():
    with criterion("1", 1, "rho_int(x^3,y^3,z^3) = 2, witness x0^2*x1^2*x2^2 at (2,1)"):
        I = minimalize([(3, 0, 0), (0, 3, 0), (0, 0, 3)])
        res = rho_int_search(I)
        assert res.exact and res.value == 2
        w = res.witness
        assert (w.m, w.r, w.monomial) == (2, 1, (2, 2, 2))
        assert verify_witness(w, I)
        assert not contains_monomial(I, (2, 2, 2))


def test_2_three_coordinate_points():
    with criterion("2", 30, "alpha 2, waldschmidt 3/2, rho_hat 4/3, rho_int 1, rho in [4/3, 17/12)"):
        Z = coordinate_points(2)
        I = ideal_of(Z)
        s, N = 3, 2
        assert alpha(I) == 2 == s - N + 1
        assert waldschmidt(Z) == Fraction(s, N)
        rh = rho_hat(Z)
        assert rh.certified and rh.value == Fraction(N * (s - N + 1), s)
        ri = rho_int_search(I)
        assert ri.exact and ri.value == 1
        b = dd_window(Z, rh, Fraction(1, 12))
        assert (b.lo, b.hi_exclusive) == (Fraction(4, 3), Fraction(17, 12))


def test_3_denkert_convergence():
    with criterion("3", 30, "(A,B) = (4,3) then (8,6); lower bounds 1 then 8/7"):
        Z = coordinate_points(2)
        e1 = denkert_estimate(Z, 2, 1)
        e2 = denkert_estimate(Z, 2, 2)
        assert (e1.A, e1.B) == (4, 3) and (e2.A, e2.B) == (8, 6)
        assert e1.rho_hat_upper == e2.rho_hat_upper == Fraction(4, 3)
        assert (e1.rho_lower, e2.rho_lower) == (1, Fraction(8, 7))
        assert e2.rho_lower > e1.rho_lower


def test_4_vertex_theorem():
    with criterion("4", 120, "I(Z)^m = I(mZ) with explicit decompositions"):
        for N, m_max in [(2, 5), (3, 4), (4, 3)]:
            assert verify_vertex_theorem(N, m_max)


def test_5_eight_points_char_p():
    with criterion("5", 300, "alpha 3, 5, 10; order 15 < 18 certifies I(25Z) not in I(Z)^20"):
        Z, L = build_ex3(0)
        assert [alpha_p2(Z, m) for m in (1, 2, 4)] == [3, 5, 10]
        assert vanishing_order_on_line(Z, 25, 65, L) == 15
        cert = order_certificate(Z, L, 25, 20, 65)
        assert cert.order == 15 and cert.power_bound == 15 + 3
        assert cert.not_contained


# -- criterion 6: property suites ------------------------------------------------------

def _random_ideal(rnd):
    n = rnd.randint(1, 4)
    gens = [tuple(rnd.randint(0, 3) for _ in range(n)) for _ in range(rnd.randint(1, 4))]
    gens = [g for g in gens if any(g)] or [(1,) + (0,) * (n - 1)]
    return minimalize(gens, n)


def test_6a_briancon_skoda():
    with criterion("6a", 120, "closure(I^(t+N)) in I^t, 50 seeded ideals, t <= 3"):
        rnd = random.Random(20240601)
        for _ in range(50):
            I = _random_ideal(rnd)
            N = I.nvars - 1
            for t in range(1, 4):
                assert ideal_in_power(closure_of_power(I, t + N), I, t)


def test_6b_height_times_r():
    with criterion("6b", 120, "I(N r Z) in I(Z)^r on the fleet, r <= 4"):
        for Z in FLEET.values():
            I = ideal_of(Z)
            for r in range(1, 5):
                assert ideal_in_power(symbolic_power(Z, Z.N * r), I, r)


def test_6c_closure_shift():
    with criterion("6c", 120, "closure(I^(N+m-1)) in I^m on the fleet, m <= 4"):
        for Z in FLEET.values():
            I = ideal_of(Z)
            for m in range(1, 5):
                assert ideal_in_power(closure_of_power(I, Z.N + m - 1), I, m)


def test_6d_oracle_equivalence():
    with criterion("6d", 120, "power and Newton membership routes agree, degree <= 12, n = 3"):
        mons = monomials_up_to(3, 12)
        for Z in FLEET.values():
            if Z.nvars != 3:
                continue
            I = ideal_of(Z)
            for r in range(1, 4):
                P = power(I, r)
                for a in mons:
                    assert in_power(a, I, r) == contains_monomial(P, a)
            for a in mons:
                assert np_contains(I, a) == np_contains_facets(I, a)


def test_6e_mt3_chain_and_rho_below_h():
    with criterion("6e", 120, "MT3 chain never inverted; rho_hat < h gives certified rho < h"):
        for Z in FLEET.values():
            rep = mt3_criteria(Z, 4)
            chain = [rep.a, rep.b, rep.c, rep.d]
            assert all(not (x is True and y is False) for x, y in zip(chain, chain[1:]))
            rh = rho_hat(Z)
            h = Z.big_height
            if rh.value < h:
                b = dd_window(Z, rh, (h - rh.value) / 2)
                if b.exact is not None:
                    assert b.exact < h
                else:
                    assert b.hi_exclusive <= h          # rho < hi_exclusive


def test_6f_conjectures():
    findings = []
    with criterion("6f", 120, "Grifo, degree-slack power, Chudnovsky, valuation-Chudnovsky"):
        for name, Z in FLEET.items():
            I = ideal_of(Z)
            for check in conjecture_checks(Z, 4, 6, 3).values():
                if check.status != "fail":
                    continue
                for f in check.failures:
                    # a finding counts only once it re-verifies from scratch
                    if {"m", "r", "monomial"} <= set(f):
                        a = parse_monomial(f["monomial"], Z.nvars)
                        assert contains_monomial(symbolic_power(Z, f["m"]), a)
                    findings.append((name, check.name, f))
    if findings:
        print("FINDINGS (re-verified):")
        for item in findings:
            print("   ", item)
        ACCEPTANCE["6f"] = ACCEPTANCE["6f"][:3] + (f"{len(findings)} re-verified finding(s)",)


def test_7_determinism(capsys, tmp_path):
    with criterion("7", 240, "fleet CSV and report JSON byte-identical across runs"):
        fleet = FLEET_DIR / "fleet.txt"
        assert main(["fleet", str(fleet)]) == 0
        first = capsys.readouterr().out
        assert main(["fleet", str(fleet), "--threads", "2"]) == 0
        second = capsys.readouterr().out
        assert first == second and len(first.splitlines()) == 7
        star = FLEET_DIR / "star3_p2.scheme"
        main(["report", str(star)])
        j1 = capsys.readouterr().out
        main(["report", str(star)])
        j2 = capsys.readouterr().out
        assert j1 == j2
