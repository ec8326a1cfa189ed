"""The acceptance suite: one function per criterion, shared by the CLI and the tests."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distinction import (
    NOT_DISTINGUISHED, assemble_chain, brute_force_oracle, check_propagation_formula,
    nullity_by_R, solve, steinberg_case, steinberg_pair,
)
from .ffchar import (
    FieldParams, MulCharacter, admissible_exponents, frobenius_orbit_length,
    pair_from_exponent,
)
from .gl2fq import (
    NonsplitTorus, count_square_norm_cosets, gl2, group_generators,
    torus_acts_simply_transitively,
)
from .jl import AGREEMENT_PROVEN, jl_agreement_report, kable_scan
from .repmodels import (
    InducedModel, SubgroupAction, build_J, check_J_intertwines, decompose_Vs,
    inner_product_trivial_on_Ks1, s1_s2_vanishing, triviality_forces_halfshift,
    whittaker_vector,
)


@dataclass(frozen=True)
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str


def c1_simple_transitivity() -> Outcome:
    t0 = time.perf_counter()
    ok = True
    for Q in (3, 5, 9):
        ok = ok and torus_acts_simply_transitively(Q)[0]
    dt = time.perf_counter() - t0
    return Outcome(1, "simple transitivity", ok and dt < 1.0, f"Q in 3,5,9 in {dt:.3f}s")


def c2_square_norm_count() -> Outcome:
    got = {Q: count_square_norm_cosets(Q, p) for Q, p in ((3, 3), (5, 5), (9, 3), (27, 3))}
    ok = all(r == (Q + 1) // 2 for Q, r in got.items())
    return Outcome(2, "square-norm count", ok, f"r = {got}")


def c3_hom_dimensions() -> Outcome:
    bad = []
    for Q in (3, 9, 27):
        q = 3
        G = gl2(Q)
        A = SubgroupAction(G, NonsplitTorus(G).elements())
        step = (Q - 1) // (q - 1)
        for c in range(q - 1):
            # chi0 on k^x, pulled back along the norm to F_Q^x
            chi = MulCharacter(q - 1, c)
            want = 0 if chi.is_trivial() else 1
            if A.steinberg_dim(MulCharacter(Q - 1, c * step)) != want:
                bad.append(("St", Q, c))
        for a in range(Q - 1):
            for b in range(Q - 1):
                want = int((a + b) % (Q - 1) == 0)
                if A.induced_dim(MulCharacter(Q - 1, a), MulCharacter(Q - 1, b)) != want:
                    bad.append(("Ind", Q, a, b))
    return Outcome(3, "Hom dimensions at s0", not bad, f"mismatches: {bad[:5]}" if bad else "all characters agree")


def c4_s1_inner_product() -> Outcome:
    bad = []
    for Q in (3, 9):
        G = gl2(Q)
        for a in range(Q - 1):
            for b in range(Q - 1):
                v = inner_product_trivial_on_Ks1(InducedModel(G, MulCharacter(Q - 1, a), MulCharacter(Q - 1, b)))
                want = 2 if (a + b) % (Q - 1) == 0 else 0
                if v != want:
                    bad.append((Q, a, b, v))
    return Outcome(4, "s1 inner product", not bad, f"mismatches: {bad[:5]}" if bad else "Q in 3,9")


def c5_half_shift() -> Outcome:
    bad = []
    count = 0
    for Q, q, delta in ((9, 3, 2), (27, 3, 3)):
        d = 2 * delta
        for f in range(1, d + 1):
            if d % f or (d // f) % 2:
                continue
            N = q ** f - 1
            for a in range(N):
                if frobenius_orbit_length(MulCharacter(N, a), q) != f:
                    continue
                p = pair_from_exponent(q, delta, f, a)
                count += 1
                res = triviality_forces_halfshift(p.chi0, f, q)
                if not res.consistent:
                    bad.append((Q, f, a, res.trivial_pairs))
    return Outcome(5, "half-shift law", not bad, f"{count} characters, violations {bad[:5]}")


def c6_J_operator(seed: int = 0, samples: int = 100) -> Outcome:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a in admissible_exponents(3, 2, 2):
        p = pair_from_exponent(3, 2, 2, a)
        U = decompose_Vs(p)[-1].model
        J = build_J(U, p)
        G = U.G
        f0 = whittaker_vector(U)
        worst = max(worst, float(np.max(np.abs(J.matrix @ f0 - f0))))
        hs = list(group_generators(G))
        while len(hs) < len(group_generators(G)) + samples:
            g = tuple(int(x) for x in rng.integers(0, G.Q, size=4))
            if G.det(g):
                hs.append(g)
        worst = max(worst, max(check_J_intertwines(U, J, p.q, h) for h in hs))
        Je = np.linalg.matrix_power(J.matrix, p.e)
        worst = max(worst, float(np.max(np.abs(Je - np.eye(U.dim)))))
    ok = worst < 1e-9
    return Outcome(6, "J operator", ok, f"max residual {worst:.2e}")


def c7_f_even_vanishing() -> Outcome:
    rows = []
    ok = True
    for a in admissible_exponents(3, 2, 2):
        p = pair_from_exponent(3, 2, 2, a)
        U = decompose_Vs(p)[-1].model
        r = s1_s2_vanishing(U, build_J(U, p))
        nr = nullity_by_R(p, 3)
        good = abs(r.S1) < 1e-9 and abs(r.S2) < 1e-9 and all(v == 0 for v in nr.values())
        ok = ok and good
        rows.append(f"a={a}: |S1|={abs(r.S1):.1e} |S2|={abs(r.S2):.1e} nullity={nr}")
    return Outcome(7, "f-even vanishing", ok, "; ".join(rows))


def c8_propagation(sign: int = 1) -> Outcome:
    t0 = time.perf_counter()
    p = pair_from_exponent(3, 3, 3, 1)
    sol = solve(assemble_chain(p, 3))
    dt = time.perf_counter() - t0
    if sol.nullity != 1:
        return Outcome(8, "propagation formula", False, f"nullity {sol.nullity} at R=3")
    pc = check_propagation_formula(sol, sign)
    ok = pc.max_residual < 1e-8 and dt < 60
    return Outcome(8, "propagation formula", ok, f"residual {pc.max_residual:.2e}, Q=27 solve {dt:.1f}s")


def c9_multiplicity() -> Outcome:
    worst = 0
    n = 0
    for delta in (1, 2, 3):
        d = 2 * delta
        for f in range(1, d + 1):
            for a in admissible_exponents(3, delta, f):
                p = pair_from_exponent(3, delta, f, a)
                if p.central_obstruction():
                    n += 1
                    continue
                nr = nullity_by_R(p, 3)
                worst = max(worst, max(nr.values()))
                n += 1
    return Outcome(9, "multiplicity at most one", worst <= 1, f"{n} pairs, max nullity {worst}")


def c10_steinberg() -> Outcome:
    parts = []
    ok = True
    for delta in (1, 2):
        rep = steinberg_case(FieldParams.from_q(3, delta), "ramified")
        ok = ok and rep.verdict == NOT_DISTINGUISHED
        parts.append(f"ramified delta={delta}: {rep.nullity_by_R}")
    for tdeg in (4, 10):
        rep = steinberg_case(None, "unramified", tdeg)
        sign_used = rep.residuals["nullity_without_sign_row"] == 1
        ok = ok and rep.verdict == NOT_DISTINGUISHED and sign_used
        parts.append(f"unramified tdeg={tdeg}: {rep.nullity_by_R}, without sign row "
                     f"{int(rep.residuals['nullity_without_sign_row'])}")
    return Outcome(10, "Steinberg of G", ok, "; ".join(parts))


def c11_jl_agreement() -> Outcome:
    parts = []
    ok = True
    pairs = [pair_from_exponent(3, 2, 2, a) for a in admissible_exponents(3, 2, 2)]
    pairs.append(steinberg_pair(3, 2))
    for p in pairs:
        r = jl_agreement_report(p, R=2)
        good = (r.flag == AGREEMENT_PROVEN and r.d_side == NOT_DISTINGUISHED
                and r.split_side == NOT_DISTINGUISHED and r.kable)
        ok = ok and good
        parts.append(f"f={p.f} a={p.chi_f.residue.exponent}: {r.d_side} / {r.split_side} ({r.flag})")
    n, bad = kable_scan(3, 2)
    ok = ok and bad == 0
    parts.append(f"Kable scan {n} characters, {bad} violations")
    return Outcome(11, "JL agreement", ok, "; ".join(parts))


def c12_oracle() -> Outcome:
    bad = []
    n = 0
    for delta in (1, 2):
        for f in (1, 2):
            for a in admissible_exponents(3, delta, f):
                p = pair_from_exponent(3, delta, f, a)
                for R in (0, 1):
                    n += 1
                    s = 0 if p.central_obstruction() else solve(assemble_chain(p, R)).nullity
                    o = brute_force_oracle(p, R)
                    if s != o:
                        bad.append((delta, f, a, R, s, o))
    return Outcome(12, "oracle equivalence", not bad, f"{n} instances, mismatches {bad}")


CRITERIA: dict[int, Callable[..., Outcome]] = {
    1: c1_simple_transitivity,
    2: c2_square_norm_count,
    3: c3_hom_dimensions,
    4: c4_s1_inner_product,
    5: c5_half_shift,
    6: c6_J_operator,
    7: c7_f_even_vanishing,
    8: c8_propagation,
    9: c9_multiplicity,
    10: c10_steinberg,
    11: c11_jl_agreement,
    12: c12_oracle,
}


def run_suite(only: list[int] | None = None, inject_sign_error: bool = False,
              seed: int = 0) -> list[Outcome]:
    out = []
    for k, fn in CRITERIA.items():
        if only and k not in only:
            continue
        if k == 8:
            out.append(fn(-1 if inject_sign_error else 1))
        elif k == 6:
            out.append(fn(seed))
        else:
            out.append(fn())
    return out


def format_line(o: Outcome) -> str:
    return f"[{'PASS' if o.passed else 'FAIL'}] {o.number:2d} {o.name}: {o.detail}"

