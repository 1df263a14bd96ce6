"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 consistency violation, 4 resource cap,
1 any other refusal (a failed precondition, for instance).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

from .config import RunConfig, parse_config
from .engine import (K_search, conjecture_checks, dd_window, denkert_estimate, frac_str,
                     mt3_criteria, rho_hat, rho_int_search, symbolic_in_closure,
                     symbolic_in_power)
from .errors import ParseError, ResourceLimitError, ResurgenceError
from .fatpoints import MonomialFatScheme, ideal_of, parse_scheme, symbolic_power, waldschmidt
from .monomial import (MonomialIdeal, alpha, format_ideal, format_monomial, ideal_in_power,
                       parse_ideal, parse_monomial)
from .newton import closure_of_power
from .points_p2 import (alpha_p2, build_ex3, expected_dim, format_p2_scheme, hilbert_dim,
                        order_certificate, parse_p2_scheme, vanishing_order_on_line)
from .report import SUMMARY_COLUMNS, _denkert_dict, build_report, summary_row
from .vertices import decompose, verify_vertex_theorem

EXIT_OK, EXIT_OTHER, EXIT_PARSE, EXIT_CONSISTENCY, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _emit(obj):
    print(json.dumps(obj, separators=(",", ":")))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_scheme(path) -> MonomialFatScheme:
    return parse_scheme(_read(path))


def load_ideal(path) -> MonomialIdeal:
    """An ideal file (``vars:`` header) or a scheme file, whose ideal is taken."""
    text = _read(path)
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            if line.startswith("ambient:"):
                return ideal_of(parse_scheme(text))
            break
    return parse_ideal(text)


def _config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = parse_config(_read(args.config), cfg)
    overrides = {f.name: getattr(args, f"cfg_{f.name}", None) for f in fields(RunConfig)}
    try:
        return cfg.updated(**overrides)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad option: {exc}") from None


# -- subcommands ----------------------------------------------------------------------

def cmd_report(args, cfg):
    rep = build_report(load_scheme(args.scheme), cfg)
    if cfg.format == "csv":
        _write_csv([summary_row(rep, str(args.scheme))])
    else:
        print(rep.to_json())
    if rep.resource_errors:
        return EXIT_RESOURCE
    return EXIT_CONSISTENCY if rep.consistency_flags else EXIT_OK


def cmd_contain(args, cfg):
    Z = load_scheme(args.scheme)
    if args.mode == "power":
        res = symbolic_in_power(Z, args.m, args.r)
        witness = None if res else res.monomial
    elif args.mode == "closure":
        res = symbolic_in_closure(Z, args.m, args.r)
        witness = None if res else res.monomial
    else:
        res = ideal_in_power(symbolic_power(Z, args.m), ideal_of(Z), args.r, args.slack)
        witness = res.witness
    out = {"contained": witness is None}
    if witness is not None:
        out["witness"] = format_monomial(witness)
    _emit(out)
    return EXIT_OK


def cmd_closure(args, cfg):
    print(format_ideal(closure_of_power(load_ideal(args.ideal), args.t)), end="")
    return EXIT_OK


def cmd_symbolic(args, cfg):
    print(format_ideal(symbolic_power(load_scheme(args.scheme), args.m)), end="")
    return EXIT_OK


def cmd_waldschmidt(args, cfg):
    Z = load_scheme(args.scheme)
    _emit({"alpha": alpha(ideal_of(Z)), "waldschmidt": frac_str(waldschmidt(Z))})
    return EXIT_OK


def _search_json(res):
    out = {"value": frac_str(res.value), "exact": res.exact, "certificate": res.certificate}
    if res.upper is not None:
        out["upper"] = frac_str(res.upper)
    if res.witness is not None:
        out["witness"] = res.witness.to_dict()
    return out


def cmd_rho_int(args, cfg):
    I = load_ideal(args.ideal)
    _emit({"rho_int": _search_json(rho_int_search(I, cfg.r_probe)),
           "K": _search_json(K_search(I, cfg.r_probe))})
    return EXIT_OK


def cmd_denkert(args, cfg):
    est = denkert_estimate(load_scheme(args.scheme), args.a, args.s, cfg.epsilon, cfg.t_check,
                           resolve=args.resolve, window_cap=cfg.window_cap)
    out = _denkert_dict(est)
    out["lower_witness"] = est.lower_witness.to_dict()
    if est.witness is not None:
        out["witness"] = est.witness.to_dict()
    _emit(out)
    return EXIT_OK


def cmd_dd_window(args, cfg):
    Z = load_scheme(args.scheme)
    rh = rho_hat(Z, cfg.grid_cap)
    b = dd_window(Z, rh, cfg.epsilon, cfg.window_cap)
    out = {"rho_hat": frac_str(rh.value), "epsilon": frac_str(cfg.epsilon), **b.to_dict(),
           "pairs_checked": b.pairs_checked}
    if b.witness is not None:
        out["witness"] = b.witness.to_dict()
    _emit(out)
    return EXIT_OK


def cmd_criteria(args, cfg):
    _emit(mt3_criteria(load_scheme(args.scheme), cfg.m_max).to_dict())
    return EXIT_OK


def cmd_conjectures(args, cfg):
    checks = conjecture_checks(load_scheme(args.scheme), cfg.grifo_r_max, cfg.chudnovsky_m_max,
                               cfg.slack_r_max)
    _emit({k: v.to_dict() for k, v in checks.items()})
    return EXIT_OK


def cmd_vertices(args, cfg):
    if args.monomial:
        f = parse_monomial(args.monomial, args.N + 1)
        factors = decompose(f, args.N, args.m)
        _emit({"monomial": format_monomial(f), "factors": [format_monomial(g) for g in factors]})
    else:
        _emit({"N": args.N, "m_max": args.m, "holds": verify_vertex_theorem(args.N, args.m)})
    return EXIT_OK


def cmd_points_p2(args, cfg):
    p = cfg.prime
    if args.action == "ex3":
        Z, L = build_ex3(cfg.seed, p)
        s = args.s
        cert = order_certificate(Z, L, 25 * s, 19 * s + 1, 65 * s)
        _emit({"seed": Z.seed, "prime": p, "scheme": format_p2_scheme(Z, [L]),
               "alpha": {str(m): alpha_p2(Z, m) for m in (1, 2, 4)},
               "certificate": cert.to_dict()})
        return EXIT_OK
    if args.scheme is None:
        raise ParseError(f"points-p2 {args.action} needs a scheme file")
    Z, lines, raw = parse_p2_scheme(_read(args.scheme), p)
    raw = raw if args.rational else None
    if args.action == "hilbert":
        _emit({"m": args.m, "d": args.d,
               "dim": hilbert_dim(Z, args.m, args.d, args.rational, raw),
               "expected": expected_dim(Z, args.m, args.d)})
    elif args.action == "alpha":
        _emit({"m": args.m, "alpha": alpha_p2(Z, args.m, args.rational, raw)})
    else:
        if not lines:
            raise ParseError("order needs a 'line:' entry in the scheme file")
        _emit({"m": args.m, "d": args.d,
               "order": vanishing_order_on_line(Z, args.m, args.d, lines[args.line])})
    return EXIT_OK


# -- fleet ------------------------------------------------------------------------

def read_fleet(path) -> list:
    base = Path(path).parent
    out = []
    for line in _read(path).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(str(base / line))
    return out


def fleet_row(path: str, cfg: RunConfig) -> dict:
    """One summary row; any failure lands in the error column."""
    name = Path(path).name
    try:
        return summary_row(build_report(load_scheme(path), cfg), name)
    except ResurgenceError as exc:
        row = {k: "" for k in SUMMARY_COLUMNS}
        row.update(scheme=name, error=f"{type(exc).__name__}: {exc}")
        return row


def run_fleet(paths, cfg: RunConfig) -> list:
    if cfg.threads > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(fleet_row, paths, [cfg] * len(paths)))   # input order kept
    return [fleet_row(p, cfg) for p in paths]


def _write_csv(rows, stream=None):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    (stream or sys.stdout).write(buf.getvalue())


def cmd_fleet(args, cfg):
    _write_csv(run_fleet(read_fleet(args.fleet), cfg))
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------

def _add_config_flags(p):
    p.add_argument("--config", help="key = value configuration file")
    for f in fields(RunConfig):
        p.add_argument("--" + f.name.replace("_", "-"), dest=f"cfg_{f.name}", default=None,
                       help=f"override {f.name} (default {f.default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resurgence",
                                     description="Containment invariants of monomial ideals and fat points.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _add_config_flags(p)
        p.set_defaults(fn=fn)
        return p

    add("report", cmd_report, "full invariant report").add_argument("scheme")
    p = add("contain", cmd_contain, "decide I(mZ) ⊆ I(Z)^r")
    p.add_argument("scheme")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mode", choices=("power", "closure", "slack"), default="power")
    p.add_argument("--slack", type=int, default=0, help="minimum cofactor degree (mode slack)")
    p = add("closure", cmd_closure, "integral closure of I^t")
    p.add_argument("ideal")
    p.add_argument("--t", type=int, default=1)
    p = add("symbolic", cmd_symbolic, "generators of I(mZ)")
    p.add_argument("scheme")
    p.add_argument("--m", type=int, required=True)
    add("waldschmidt", cmd_waldschmidt, "alpha and the Waldschmidt constant").add_argument("scheme")
    add("rho-int", cmd_rho_int, "rho_int and K of an ideal").add_argument("ideal")
    p = add("denkert", cmd_denkert, "bracket rho from one containment")
    p.add_argument("scheme")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--resolve", action="store_true", help="also check the residual window")
    add("dd-window", cmd_dd_window, "rho within epsilon of rho_hat").add_argument("scheme")
    add("criteria", cmd_criteria, "criteria for rho = 1").add_argument("scheme")
    add("conjectures", cmd_conjectures, "finite conjecture checks").add_argument("scheme")
    p = add("vertices", cmd_vertices, "decompositions for the vertex configuration")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--monomial", help="decompose this monomial instead of checking all m <= M")
    p = add("points-p2", cmd_points_p2, "fat points in P^2 over F_p")
    p.add_argument("action", choices=("hilbert", "alpha", "order", "ex3"))
    p.add_argument("scheme", nargs="?")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--line", type=int, default=0, help="index of the line in the file")
    p.add_argument("--s", type=int, default=1, help="scale for ex3")
    p.add_argument("--rational", action="store_true", help="exact rank over Q")
    add("fleet", cmd_fleet, "CSV summary over a list of schemes").add_argument("fleet")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return args.fn(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ResurgenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
