"""Command-line driver: single runs, scans, the acceptance suite."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .distinction import (
    CANDIDATE, NOT_DISTINGUISHED, CentralCharacterObstruction, assemble_chain,
    brute_force_oracle, check_propagation_formula, solve, steinberg_case, steinberg_pair,
)
from .ffchar import (
    FieldError, FieldParams, NotNonCuspidal, NotRegular, PairData, admissible_exponents,
    pair_from_exponent, prime_power,
)
from .gl2fq import NonsplitTorus, gl2, group_generators
from .jl import CONFLICT, jl_agreement_report
from .repmodels import (
    DimensionMismatch, IntegralityViolation, build_J, check_J_intertwines, decompose_Vs,
    invariant_dim, s1_s2_vanishing, whittaker_vector,
)
from .suite import format_line, run_suite
from .treeorbits import SizeCap, build_tree

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


def _check(anchor: str, ok: bool, detail: str) -> dict:
    return {"anchor": anchor, "pass": bool(ok), "detail": detail}


def _fmt(z: complex) -> str:
    re, im = (0.0 if abs(x) < 1e-12 else x for x in (z.real, z.imag))
    return f"{re:.6g}{im:+.6g}j"


def _characters(pair: PairData) -> dict:
    return {
        "chi_f": {"order": pair.chi_f.residue.N + 1, "exponent": pair.chi_f.residue.exponent,
                  "unif": str(pair.chi_f.unif)},
        "chibar": {"order": pair.chibar.N + 1, "exponent": pair.chibar.exponent},
        "chi0": {"order": pair.chi0.N + 1, "exponent": pair.chi0.exponent,
                 "trivial_on_k": pair.chi0_trivial_on_k()},
        "e": pair.e,
        "e_prime": pair.e_prime,
        "zeta": str(pair.zeta()),
    }


def _pair_checks(pair: PairData, R: int, seed: int, oracle: bool) -> tuple[list[dict], dict, str]:
    checks: list[dict] = []
    try:
        systems = {r: assemble_chain(pair, r) for r in range(1, R + 1)}
    except CentralCharacterObstruction as exc:
        checks.append(_check("central-character", True, f"obstruction: {exc}"))
        return checks, {"R": R, "nullity": 0, "nullity_by_R": {str(r): 0 for r in range(1, R + 1)}}, NOT_DISTINGUISHED
    checks.append(_check("central-character", True, "chi trivial on F^x"))
    sols = {r: solve(s) for r, s in systems.items()}
    nr = {r: s.nullity for r, s in sols.items()}
    vals = [nr[r] for r in sorted(nr)]
    checks.append(_check("nullity-monotone", all(a >= b for a, b in zip(vals, vals[1:])), str(vals)))
    checks.append(_check("multiplicity-at-most-one", max(vals) <= 1, f"max nullity {max(vals)}"))

    G = gl2(pair.Q)
    T = NonsplitTorus(G).elements()
    try:
        dims = [invariant_dim(c.model, T) for c in decompose_Vs(pair)]
        checks.append(_check("hom-dimensions-at-s0", True, f"projector rank = character sum: {dims}"))
    except (DimensionMismatch, IntegralityViolation) as exc:
        checks.append(_check("hom-dimensions-at-s0", False, str(exc)))

    top = sols[R]
    if top.witness is not None:
        killed = [c for c in top.system.components
                  if c.kind == "Ind" and not (c.model.chi1 * c.model.chi2).is_trivial()]
        small = max((float(np.max(np.abs(top.part(k, c.label))))
                     for k in range(R + 1) for c in killed), default=0.0)
        checks.append(_check("induced-blocks-vanish", small < 1e-9, f"max |phi| {small:.2e}"))
        pc = check_propagation_formula(top)
        checks.append(_check("propagation-formula", pc.max_residual < 1e-8 and pc.s0_kernel_residual < 1e-8,
                             f"residual {pc.max_residual:.2e}, s0 kernel residual {pc.s0_kernel_residual:.2e}"))

    if pair.f % 2 == 0:
        U = decompose_Vs(pair)[-1].model
        J = build_J(U, pair)
        rng = np.random.default_rng(seed)
        hs = list(group_generators(G))
        while len(hs) < len(group_generators(G)) + 20:
            g = tuple(int(x) for x in rng.integers(0, G.Q, size=4))
            if G.det(g):
                hs.append(g)
        res = max(check_J_intertwines(U, J, pair.q, h) for h in hs)
        f0 = whittaker_vector(U)
        res = max(res, float(np.max(np.abs(J.matrix @ f0 - f0))))
        res = max(res, float(np.max(np.abs(np.linalg.matrix_power(J.matrix, pair.e) - np.eye(U.dim)))))
        checks.append(_check("J-operator", res < 1e-9, f"max residual {res:.2e}"))
        s12 = s1_s2_vanishing(U, J)
        checks.append(_check("S1-S2-vanishing", abs(s12.S1) < 1e-9 and abs(s12.S2) < 1e-9,
                             f"S1 {_fmt(s12.S1)}, S2 {_fmt(s12.S2)}"))
        checks.append(_check("f-even-not-distinguished", nr[R] == 0, f"nullity {nr[R]}"))

    jl = jl_agreement_report(pair, d_nullity=nr[R])
    checks.append(_check("kable-exclusion", jl.kable, "not both GL_f(F)- and eta-distinguished"))
    checks.append(_check("jl-agreement", jl.flag != CONFLICT,
                         f"{jl.d_side} / {jl.split_side}: {jl.flag}"))

    if oracle:
        if pair.Q <= 9 and pair.f <= 2:
            o = {r: brute_force_oracle(pair, r) for r in (0, 1)}
            s = {r: solve(assemble_chain(pair, r)).nullity for r in (0, 1)}
            checks.append(_check("oracle-agreement", o == s, f"oracle {o}, solver {s}"))
        else:
            checks.append(_check("oracle-agreement", True, "skipped: outside the oracle range"))

    verdict = NOT_DISTINGUISHED if nr[R] == 0 else CANDIDATE
    solver = {"R": R, "nullity": nr[R], "nullity_by_R": {str(r): n for r, n in nr.items()}}
    return checks, solver, verdict


def _report_pair(pair: PairData, args: argparse.Namespace) -> dict:
    t0 = time.perf_counter()
    checks, solver, verdict = _pair_checks(pair, args.R, args.spot_check_seed, args.oracle)
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"p": pair.params.p, "q": pair.q, "delta": pair.params.delta, "Q": pair.Q,
                   "f": pair.f, "chi_exp": pair.chi_f.residue.exponent,
                   "unif": str(pair.chi_f.unif), "case": "ramified"},
        "characters": _characters(pair),
        "checks": checks,
        "solver": solver,
        "verdict": verdict,
        "timing": {"total_s": round(time.perf_counter() - t0, 3)},
    }


def _report_steinberg(args: argparse.Namespace) -> dict:
    t0 = time.perf_counter()
    if args.case == "unramified":
        rep = steinberg_case(None, "unramified", args.tdeg, args.R)
        checks = [
            _check("nullity-monotone", rep.monotone(), str(rep.nullity_by_R)),
            _check("edge-sign-row", rep.residuals["nullity_without_sign_row"] == 1,
                   "2 phi(v) = 0 on the edge line; without it nullity "
                   f"{int(rep.residuals['nullity_without_sign_row'])}"),
            _check("steinberg-not-distinguished", rep.nullity == 0, f"nullity {rep.nullity}"),
        ]
        params = {"steinberg": True, "case": "unramified", "tdeg": args.tdeg, "Q": args.tdeg - 1}
        chars: dict = {"chi_f": "trivial", "f": 1}
        solver = {"R": args.R, "nullity": rep.nullity,
                  "nullity_by_R": {str(r): n for r, n in rep.nullity_by_R.items()}}
        verdict = rep.verdict
    else:
        pair = steinberg_pair(args.q, args.delta)
        checks, solver, verdict = _pair_checks(pair, args.R, args.spot_check_seed, args.oracle)
        checks.append(_check("steinberg-not-distinguished", solver["nullity"] == 0,
                             f"nullity {solver['nullity']}"))
        params = {"steinberg": True, "case": "ramified", "p": pair.params.p, "q": pair.q,
                  "delta": pair.params.delta, "Q": pair.Q}
        chars = _characters(pair)
    return {"schema_version": SCHEMA_VERSION, "params": params, "characters": chars,
            "checks": checks, "solver": solver, "verdict": verdict,
            "timing": {"total_s": round(time.perf_counter() - t0, 3)}}


def _scan(args: argparse.Namespace) -> dict:
    t0 = time.perf_counter()
    d = 2 * args.delta
    fs = [args.f] if args.f else [f for f in range(1, d + 1) if d % f == 0 and (d // f) % 2 == 0]
    rows = []
    for f in fs:
        for a in admissible_exponents(args.q, args.delta, f):
            pair = pair_from_exponent(args.q, args.delta, f, a, args.unif)
            checks, solver, verdict = _pair_checks(pair, args.R, args.spot_check_seed, args.oracle)
            rows.append({"f": f, "chi_exp": a, "nullity": solver["nullity"], "verdict": verdict,
                         "checks": checks})
    if not rows:
        rows.append({"note": "no admissible pairs"})
    return {"schema_version": SCHEMA_VERSION,
            "params": {"q": args.q, "delta": args.delta, "f": args.f, "unif": str(args.unif), "R": args.R},
            "rows": rows, "timing": {"total_s": round(time.perf_counter() - t0, 3)}}


def _failed(report: dict) -> bool:
    checks = list(report.get("checks", []))
    for row in report.get("rows", []):
        checks += row.get("checks", [])
    return any(not c["pass"] for c in checks)


def _emit(report: dict, args: argparse.Namespace) -> None:
    if args.no_timing:
        report.pop("timing", None)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="distlab", description=__doc__)
    ap.add_argument("--version", action="version", version=f"distlab {__version__}")
    ap.add_argument("--q", type=int, default=3, help="order of the residue field k")
    ap.add_argument("--delta", type=int, default=1, help="Q = q^delta")
    ap.add_argument("--f", type=int, default=None, help="degree of the admissible pair")
    ap.add_argument("--chi-exp", type=int, default=None, help="exponent of the residue character of chi_f")
    ap.add_argument("--unif", type=Fraction, default=Fraction(0),
                    help="angle of chi_f(varpi_K) as a rational number of turns")
    ap.add_argument("--R", type=int, default=3, help="truncation radius")
    ap.add_argument("--case", choices=("ramified", "unramified"), default="ramified")
    ap.add_argument("--tdeg", type=int, default=None, help="tree degree for the unramified Steinberg case")
    ap.add_argument("--steinberg", action="store_true", help="run the Steinberg representation of G")
    ap.add_argument("--scan", action="store_true", help="all admissible characters up to Galois orbit")
    ap.add_argument("--oracle", action="store_true", help="cross-check with the dense oracle (Q <= 9)")
    ap.add_argument("--verify-all", action="store_true", help="run the acceptance suite")
    ap.add_argument("--only", type=int, nargs="*", default=None, help="suite criteria to run")
    ap.add_argument("--inject-sign-error", action="store_true",
                    help="flip the sign of the propagation coefficient (mutation test)")
    ap.add_argument("--spot-check-seed", type=int, default=0)
    ap.add_argument("--export-tree", metavar="PATH", help="write the truncated tree as an edge list")
    ap.add_argument("--no-timing", action="store_true", help="omit wall-clock times for byte-stable output")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    return ap


def _validate(args: argparse.Namespace) -> None:
    if args.R < 1:
        raise ConfigError("--R must be at least 1")
    if args.steinberg and args.case == "unramified":
        if args.tdeg is None or args.tdeg < 3:
            raise ConfigError("--tdeg (at least 3) is required for the unramified Steinberg case")
        prime_power(args.tdeg - 1)
        return
    FieldParams.from_q(args.q, args.delta)
    if args.steinberg or args.scan or args.verify_all or args.export_tree:
        return
    if args.f is None or args.chi_exp is None:
        raise ConfigError("a single run needs --f and --chi-exp (or use --scan / --steinberg)")


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        if args.verify_all:
            outs = run_suite(args.only, args.inject_sign_error, args.spot_check_seed)
            for o in outs:
                print(format_line(o))
            return 0 if all(o.passed for o in outs) else 1
        if args.export_tree:
            Q = args.tdeg - 1 if args.case == "unramified" and args.tdeg else args.q ** args.delta
            tree = build_tree(Q, args.R, args.case)
            with open(args.export_tree, "w") as fh:
                tree.export_edges(fh)
            return 0
        if args.steinberg:
            report = _report_steinberg(args)
        elif args.scan:
            report = _scan(args)
        else:
            pair = pair_from_exponent(args.q, args.delta, args.f, args.chi_exp, args.unif)
            report = _report_pair(pair, args)
    except (ConfigError, FieldError, NotNonCuspidal, NotRegular, SizeCap) as exc:
        print(f"distlab: configuration error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 1 if _failed(report) else 0


def main() -> None:
    sys.exit(run())
