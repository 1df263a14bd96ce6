"""The full invariant pipeline for one scheme, with cross-checks between results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .config import RunConfig
from .engine import (DenkertEstimate, RhoBracket, SearchResult, K_search, conjecture_checks,
                     dd_window, denkert_estimate, denkert_precondition, frac_str, mt3_criteria,
                     rho_hat, rho_int_search, verify_witness)
from .errors import ResourceLimitError
from .fatpoints import MonomialFatScheme, ideal_of, waldschmidt
from .monomial import alpha


@dataclass
class ResurgenceReport:
    scheme: MonomialFatScheme
    alpha: int | None = None
    waldschmidt: Fraction | None = None
    rho_hat: object = None
    rho: RhoBracket | None = None
    rho_int: SearchResult | None = None
    K: SearchResult | None = None
    denkert: DenkertEstimate | None = None
    mt3: object = None
    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    consistency_flags: list = field(default_factory=list)
    resource_errors: list = field(default_factory=list)

    @property
    def rho_prime(self):
        # the limsup variant always agrees with rho_hat, so it is not computed separately
        return None if self.rho_hat is None else self.rho_hat.value

    @property
    def findings(self) -> list:
        """Conjecture-check failures: not bugs, but never to be dropped."""
        return [name for name, c in self.checks.items() if c.status == "fail"]

    def to_dict(self) -> dict:
        Z = self.scheme
        return {
            "scheme": {"ambient": Z.N,
                       "components": [{"prime": list(p.subset), "mult": m} for p, m in Z.components]},
            "h": Z.big_height,
            "alpha": self.alpha,
            "waldschmidt": _q(self.waldschmidt),
            "rho_hat": None if self.rho_hat is None else
            {"value": frac_str(self.rho_hat.value), "certified": self.rho_hat.certified},
            "rho_prime": _q(self.rho_prime),
            "rho": None if self.rho is None else self.rho.to_dict(),
            "rho_int": _search_dict(self.rho_int),
            "K": _search_dict(self.K),
            "denkert": _denkert_dict(self.denkert),
            "witnesses": [w.to_dict() for w in self.witnesses],
            "checks": {**{k: v.to_dict() for k, v in self.checks.items()},
                       "mt3": None if self.mt3 is None else self.mt3.to_dict()},
            "consistency": list(self.consistency_flags),
            "resource_errors": list(self.resource_errors),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _q(x):
    return None if x is None else frac_str(x)


def _search_dict(res: SearchResult | None):
    if res is None:
        return None
    if res.exact:
        return {"exact": frac_str(res.value), "certificate": res.certificate}
    return {"lo": frac_str(res.value), "hi": frac_str(res.upper), "certificate": res.certificate,
            "scope": res.scope}


def _denkert_dict(d: DenkertEstimate | None):
    if d is None:
        return None
    return {"a": d.a, "s": d.s, "A": d.A, "B": d.B, "rho_lower": frac_str(d.rho_lower),
            "rho_hat_upper": frac_str(d.rho_hat_upper), "accuracy": frac_str(d.accuracy),
            "residual_pairs": len(d.residual_window), "resolved": d.resolved,
            "exact": _q(d.exact)}


def _combine(rh, dd: RhoBracket | None, den: DenkertEstimate | None, rho_int, K) -> RhoBracket | None:
    """Intersect everything known about rho into one bracket."""
    exact = None
    witness = None
    for b in (dd, den.bracket() if den is not None else None):
        if b is not None and b.exact is not None:
            exact, witness = b.exact, b.witness
    if exact is not None:
        return RhoBracket(exact, None, exact, witness)
    lows = [Fraction(1)]
    highs = []
    if rh is not None and rh.certified:
        lows.append(rh.value)
    if dd is not None:
        lows.append(dd.lo)
        highs.append(dd.hi_exclusive)
    if den is not None:
        lows.append(den.rho_lower)
        if den.resolved:
            highs.append(den.rho_upper_if_window_clear)
    lo = max(lows)
    hi = min(highs) if highs else None
    if rh is not None and rh.certified and K is not None and K.exact and rh.value * K.value == lo:
        return RhoBracket(lo, None, lo)            # rho <= rho_hat * K pins it down
    if (rh is not None and rh.certified and rh.value == 1 and rho_int is not None
            and rho_int.exact and rho_int.value == 1):
        return RhoBracket(lo, None, Fraction(1))
    return RhoBracket(lo, hi)


def _stage(report, name, fn):
    try:
        return fn()
    except ResourceLimitError as exc:
        report.resource_errors.append(f"{name}: {exc}")
        return None


def build_report(Z: MonomialFatScheme, cfg: RunConfig | None = None) -> ResurgenceReport:
    cfg = RunConfig() if cfg is None else cfg
    rep = ResurgenceReport(Z)
    I = ideal_of(Z)
    N, h = Z.N, Z.big_height
    rep.alpha = alpha(I)
    rep.waldschmidt = waldschmidt(Z)
    rh = rep.rho_hat = _stage(rep, "rho_hat", lambda: rho_hat(Z, cfg.grid_cap))
    rep.rho_int = _stage(rep, "rho_int", lambda: rho_int_search(I, cfg.r_probe))
    rep.K = _stage(rep, "K", lambda: K_search(I, cfg.r_probe))
    dd = None
    if rh is not None and rh.certified:
        dd = _stage(rep, "dd_window", lambda: dd_window(Z, rh, cfg.epsilon, cfg.window_cap))

    def denkert():
        for a in range(1, cfg.denkert_a_max + 1):
            if denkert_precondition(Z, a, cfg.t_check):
                try:
                    return denkert_estimate(Z, a, cfg.denkert_s, cfg.epsilon, cfg.t_check,
                                            resolve=True, window_cap=cfg.window_cap)
                except ResourceLimitError:
                    return denkert_estimate(Z, a, cfg.denkert_s, cfg.epsilon, cfg.t_check)
        return None
    den = rep.denkert = _stage(rep, "denkert", denkert)
    rep.rho = _combine(rh, dd, den, rep.rho_int, rep.K)
    rep.mt3 = _stage(rep, "mt3", lambda: mt3_criteria(Z, cfg.m_max, rh, rep.rho, rep.rho_int))
    rep.checks = _stage(rep, "conjectures", lambda: conjecture_checks(
        Z, cfg.grifo_r_max, cfg.chudnovsky_m_max, cfg.slack_r_max)) or {}

    if rh is not None:
        rep.witnesses.extend(rh.witnesses)
    for res in (rep.rho_int, rep.K):
        if res is not None and res.witness is not None:
            rep.witnesses.append(res.witness)
    if den is not None:
        rep.witnesses.append(den.lower_witness)
    if rep.rho is not None and rep.rho.witness is not None:
        rep.witnesses.append(rep.rho.witness)
    rep.witnesses = list(dict.fromkeys(rep.witnesses))
    rep.consistency_flags = consistency_violations(rep, dd)
    return rep


def consistency_violations(rep: ResurgenceReport, dd: RhoBracket | None = None) -> list:
    """Names of every relation between the computed values that fails."""
    Z = rep.scheme
    I = ideal_of(Z)
    N, h = Z.N, Z.big_height
    bad = []
    rh = rep.rho_hat
    rho = rep.rho
    if rh is not None:
        if not 1 <= rh.value <= h:
            bad.append("rho_hat outside [1, h]")
        if Fraction(rep.alpha) / rep.waldschmidt > rh.value:
            bad.append("alpha/waldschmidt exceeds rho_hat")
    if rho is not None:
        if rho.exact is None and rho.hi_exclusive is not None and rho.lo >= rho.hi_exclusive:
            bad.append("empty rho bracket")
        if rho.lo > h:
            bad.append("rho above h")
        if rh is not None and rh.certified and rho.lo < rh.value:
            bad.append("rho below rho_hat")
        if rh is not None and rep.K is not None:
            cap = rep.K.value if rep.K.exact else rep.K.upper
            if rho.lo > rh.value * cap:
                bad.append("rho exceeds rho_hat * K")
        if rh is not None and rh.certified and rh.value < h:
            top = rho.exact if rho.exact is not None else rho.hi_exclusive
            if top is not None and top > h:
                bad.append("rho_hat < h but rho not certified below h")
    if rep.rho_int is not None:
        if N >= 2 and rep.rho_int.value > Fraction(N, 2):
            bad.append("rho_int above N/2")
        if rho is not None and rho.exact is not None and rep.rho_int.value > rho.exact:
            bad.append("rho_int above rho")
    den = rep.denkert
    if den is not None:
        if rh is not None and rh.certified and rh.value > den.rho_hat_upper:
            bad.append("rho_hat above Denkert bound A/B")
        if dd is not None and den.bracket() is not None:
            a, b = dd, den.bracket()
            lo = max(a.lo, b.lo)
            his = [x.exact if x.exact is not None else x.hi_exclusive for x in (a, b)]
            if any(x.exact is not None for x in (a, b)):
                if lo > min(his):
                    bad.append("Denkert and window brackets disjoint")
            elif lo >= min(his):
                bad.append("Denkert and window brackets disjoint")
    if rep.mt3 is not None and not rep.mt3.chain_ok:
        bad.append("MT3 implication chain inverted")
    for w in rep.witnesses:
        if not verify_witness(w, I, Z):
            bad.append(f"witness failed to re-verify: {w.to_dict()}")
    return bad


SUMMARY_COLUMNS = ("scheme", "N", "h", "alpha", "waldschmidt", "rho_hat", "rho_hat_certified",
                   "rho_prime", "rho_lo", "rho_hi_exclusive", "rho_exact", "rho_int", "K",
                   "mt3_a", "mt3_b", "mt3_c", "mt3_d", "grifo", "slack_power", "chudnovsky",
                   "valuation_chudnovsky", "consistency", "error")


def summary_row(rep: ResurgenceReport, name: str = "") -> dict:
    """The report scalars as one flat row of strings."""
    d = rep.to_dict()

    def search(x):
        if x is None:
            return ""
        return x["exact"] if "exact" in x else f"[{x['lo']},{x['hi']}]"

    rho = d["rho"] or {}
    mt3 = d["checks"].get("mt3") or {}
    row = {
        "scheme": name, "N": rep.scheme.N, "h": d["h"], "alpha": d["alpha"],
        "waldschmidt": d["waldschmidt"],
        "rho_hat": d["rho_hat"]["value"] if d["rho_hat"] else "",
        "rho_hat_certified": d["rho_hat"]["certified"] if d["rho_hat"] else "",
        "rho_prime": d["rho_prime"] or "",
        "rho_lo": rho.get("lo", ""), "rho_hi_exclusive": rho.get("hi_exclusive") or "",
        "rho_exact": rho.get("exact") or "",
        "rho_int": search(d["rho_int"]), "K": search(d["K"]),
        **{f"mt3_{k}": mt3.get(k, "") for k in "abcd"},
        **{k: d["checks"][k]["status"] if k in d["checks"] else ""
           for k in ("grifo", "slack_power", "chudnovsky", "valuation_chudnovsky")},
        "consistency": "; ".join(rep.consistency_flags) or "ok",
        "error": "; ".join(rep.resource_errors),
    }
    return {k: "" if row[k] is None else str(row[k]) for k in SUMMARY_COLUMNS}
