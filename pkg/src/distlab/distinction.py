"""Constraint system for invariant linear forms on the coefficient system.

Unknowns are the restrictions of a D^x-invariant form to the components of
V_s at one representative vertex per orbit class.  In the ramified case the
representatives are the chain s0, s1, ..., sR; each s_{k+1} is glued to s_k
through the edge carrying (1:0) at s_k and (0:1) at s_{k+1}.

A form on a component is stored as a dual vector in the coordinates of the
component's model (see repmodels), so a row block is a linear relation
between such vectors.  Rows touching virtual boundary edges are omitted, so
the nullity is an upper bound for the true multiplicity.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .ffchar import FieldParams, MulCharacter, PairData, pair_from_exponent, turn
from .gl2fq import GL2, Mat, MirabolicLike, NonsplitTorus, gl2, square_classes
from .repmodels import (
    RANK_TOL, Component, InducedModel, SteinbergModel, build_J, decompose_Vs,
    frob_q, null_space,
)
from .treeorbits import TruncatedTree

TAGS = (
    "invariance-at-s0",
    "invariance-at-depth-k",
    "gluing",
    "frobenius-shift",
    "uniformizer-shift",
    "J-fixedness",
    "central-character",
)

NOT_DISTINGUISHED = "not distinguished"
CANDIDATE = "candidate (necessary conditions met)"


class CentralCharacterObstruction(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    tag: str
    note: str
    rows: np.ndarray


@dataclass
class ConstraintSystem:
    R: int
    layout: dict[tuple[int, str], slice]
    components: list[Component]
    blocks: list[Block] = dc_field(default_factory=list)
    pair: PairData | None = None

    @property
    def ncols(self) -> int:
        return max((s.stop for s in self.layout.values()), default=0)

    def add(self, tag: str, note: str, rows: np.ndarray) -> None:
        if tag not in TAGS:
            raise ValueError(f"unknown tag {tag!r}")
        rows = np.atleast_2d(np.asarray(rows, dtype=complex))
        if rows.size == 0:
            rows = np.zeros((0, self.ncols), dtype=complex)
        self.blocks.append(Block(tag, note, rows))

    def row(self) -> np.ndarray:
        return np.zeros(self.ncols, dtype=complex)

    def matrix(self, skip: tuple[str, ...] = ()) -> np.ndarray:
        parts = [b.rows for b in self.blocks if b.tag not in skip]
        if not parts:
            return np.zeros((0, self.ncols), dtype=complex)
        return np.vstack(parts)

    def block_counts(self) -> dict[str, int]:
        """Number of nonempty blocks per tag."""
        out = {t: 0 for t in TAGS}
        for b in self.blocks:
            if b.rows.shape[0]:
                out[b.tag] += 1
        return out

    def row_counts(self) -> dict[str, int]:
        out = {t: 0 for t in TAGS}
        for b in self.blocks:
            out[b.tag] += b.rows.shape[0]
        return out


@dataclass(frozen=True)
class Solution:
    nullity: int
    witness: np.ndarray | None
    system: ConstraintSystem

    def part(self, k: int, label: str) -> np.ndarray:
        assert self.witness is not None
        return self.witness[self.system.layout[(k, label)]]


def _layout(components: list[Component], R: int) -> dict[tuple[int, str], slice]:
    out = {}
    pos = 0
    for k in range(R + 1):
        for c in components:
            out[(k, c.label)] = slice(pos, pos + c.dim)
            pos += c.dim
    return out


def _frobenius_transport(src: InducedModel, dst: InducedModel, q: int) -> np.ndarray:
    """P with (P h)(g) = h(Phi(g)), mapping the src space onto the dst space."""
    G = src.G
    P = np.zeros((dst.dim, src.dim), dtype=complex)
    for i, r in enumerate(dst.reps):
        b, j = G.split_coset(frob_q(G, r, q, 1))
        P[i, j] = src.borel_value(b)
    return P


def _gluing_vectors(c: Component) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Jacquet bases at the child edge (1:0) and at the parent edge (0:1)."""
    m = c.model
    if isinstance(m, SteinbergModel):
        return [m.jacquet_vector(0)], [m.jacquet_vector(m.G.Q)]
    up = m.jacquet_upper()
    low = m.jacquet_lower()
    return list(up), list(low)


def assemble_chain(pair: PairData, R: int) -> ConstraintSystem:
    """Ramified-case system on s0..sR (R = 0 keeps only the s0 conditions)."""
    reason = pair.central_obstruction()
    if reason:
        raise CentralCharacterObstruction(reason)
    G = gl2(pair.Q)
    comps = decompose_Vs(pair)
    sys_ = ConstraintSystem(R, _layout(comps, R), comps, pair=pair)
    sys_.add("central-character", "chi trivial on F^x: no rows", np.zeros((0, sys_.ncols)))
    lay = sys_.layout
    T = NonsplitTorus(G)
    t = T.generator()
    K = MirabolicLike(G).generators()
    for c in comps:
        M = np.zeros((c.dim, sys_.ncols), dtype=complex)
        M[:, lay[(0, c.label)]] = c.model.invariance_rows(t)
        sys_.add("invariance-at-s0", f"torus generator on {c.label}", M)
    for k in range(1, R + 1):
        for c in comps:
            rows = []
            for g in K:
                M = np.zeros((c.dim, sys_.ncols), dtype=complex)
                M[:, lay[(k, c.label)]] = c.model.invariance_rows(g)
                rows.append(M)
            sys_.add("invariance-at-depth-k", f"K at depth {k} on {c.label}", np.vstack(rows))
    for k in range(R):
        for c in comps:
            down, up = _gluing_vectors(c)
            rows = []
            for a, b in zip(down, up):
                r = sys_.row()
                r[lay[(k, c.label)]] = a
                r[lay[(k + 1, c.label)]] = -b
                rows.append(r)
            sys_.add("gluing", f"edge s{k}-s{k + 1} on {c.label}", np.array(rows))
    st = [c for c in comps if c.kind == "St"]
    for a, b in zip(st, st[1:]):
        r = np.zeros((a.dim, sys_.ncols), dtype=complex)
        r[:, lay[(0, a.label)]] = np.eye(a.dim)
        r[:, lay[(0, b.label)]] = -np.eye(a.dim)
        sys_.add("frobenius-shift", f"{a.label} = {b.label} at s0", r)
    if pair.f % 2 == 0:
        half = pair.f // 2
        by = {c.nus: c for c in comps}
        for n1 in range(half - 1):
            src, dst = by[(n1, n1 + half)], by[(n1 + 1, n1 + 1 + half)]
            P = _frobenius_transport(src.model, dst.model, pair.q)
            r = np.zeros((src.dim, sys_.ncols), dtype=complex)
            r[:, lay[(0, src.label)]] = np.eye(src.dim)
            r[:, lay[(0, dst.label)]] = -P.T
            sys_.add("uniformizer-shift", f"{src.label} -> {dst.label} at s0", r)
        c = by[(0, half)]
        J = build_J(c.model, pair)
        r = np.zeros((c.dim, sys_.ncols), dtype=complex)
        r[:, lay[(0, c.label)]] = np.eye(c.dim) - turn(J.zeta) * J.matrix.T
        sys_.add("J-fixedness", f"phi = zeta phi o J on {c.label}", r)
    return sys_


def assemble(pair: PairData, tree: TruncatedTree) -> ConstraintSystem:
    if tree.case != "ramified":
        raise ValueError("assemble handles the ramified case; use steinberg_case for the other")
    if tree.Q != pair.Q:
        raise ValueError(f"tree has Q={tree.Q}, pair has Q={pair.Q}")
    return assemble_chain(pair, tree.R)


def solve(system: ConstraintSystem, skip: tuple[str, ...] = ()) -> Solution:
    A = system.matrix(skip)
    N = null_space(A, system.ncols, RANK_TOL)
    n = N.shape[1]
    w = None
    if n:
        w = N[:, 0].copy()
        k = int(np.argmax(np.abs(w)))
        w = w / w[k] * abs(w[k])
    return Solution(n, w, system)


def nullity_by_R(pair: PairData, R: int) -> dict[int, int]:
    return {r: solve(assemble_chain(pair, r)).nullity for r in range(1, R + 1)}


# propagation along the chain

@dataclass(frozen=True)
class PropagationCheck:
    max_residual: float
    s0_kernel_residual: float
    delta: dict[str, complex]


def propagation_coefficient(Q: int, k: int, sign: int = 1) -> Fraction:
    """(-1)^(k-1) (Q+1) / (2 Q^k); sign = -1 injects a sign error."""
    return sign * (-1) ** (k - 1) * Fraction(Q + 1, 2 * Q ** k)


def check_propagation_formula(sol: Solution, sign: int = 1) -> PropagationCheck:
    """Compare each Steinberg part of the witness with the closed form.

    phi~ at s0 is read off in the gauge phi~(base point) = 0, so
    Delta = phi~(delta_1) - phi~(delta_{Q+1}) = -lambda at the last point of
    square class -1.  At depth k the expected dual vector is
    c_k * Delta at the parent point (0:1) and 0 elsewhere.
    """
    if sol.witness is None:
        raise ValueError("no witness to check")
    sys_ = sol.system
    pair = sys_.pair
    assert pair is not None
    Q = pair.Q
    cls = square_classes(Q, pair.q)
    last_minus = max(i for i, s in enumerate(cls) if s == -1)
    scale = float(np.max(np.abs(sol.witness)))
    worst = 0.0
    kern = 0.0
    deltas = {}
    for c in sys_.components:
        if c.kind != "St":
            continue
        lam0 = sol.part(0, c.label)
        phit = np.concatenate([[0.0], lam0])
        D = -lam0[last_minus - 1]
        deltas[c.label] = complex(D)
        # phi~ is constant on each square class, vanishing on the class of -1
        plus = [phit[i] for i in range(Q + 1) if cls[i] == 1]
        minus = [phit[i] for i in range(Q + 1) if cls[i] == -1]
        off = minus[0]
        kern = max(kern, max(abs(x - off) for x in minus), max(abs(x - plus[0]) for x in plus))
        for k in range(1, sys_.R + 1):
            exp = np.zeros(Q, dtype=complex)
            exp[Q - 1] = float(propagation_coefficient(Q, k, sign)) * D
            worst = max(worst, float(np.max(np.abs(sol.part(k, c.label) - exp))))
    return PropagationCheck(worst / scale, kern / scale, deltas)


# reports

@dataclass
class DistinctionReport:
    params: dict
    case: str
    nullity_by_R: dict[int, int]
    verdict: str
    witness: np.ndarray | None = None
    residuals: dict[str, float] = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)
    timing: float = 0.0

    @property
    def nullity(self) -> int:
        return self.nullity_by_R[max(self.nullity_by_R)]

    def monotone(self) -> bool:
        vals = [self.nullity_by_R[r] for r in sorted(self.nullity_by_R)]
        return all(a >= b for a, b in zip(vals, vals[1:]))


def verdict_for(nullity: int) -> str:
    return NOT_DISTINGUISHED if nullity == 0 else CANDIDATE


def analyze_pair(pair: PairData, R: int = 3) -> DistinctionReport:
    t0 = time.perf_counter()
    params = {"q": pair.q, "delta": pair.params.delta, "f": pair.f, "Q": pair.Q,
              "chi_exp": pair.chi_f.residue.exponent, "unif": str(pair.chi_f.unif)}
    try:
        nr = nullity_by_R(pair, R)
    except CentralCharacterObstruction as exc:
        return DistinctionReport(params, "ramified", {r: 0 for r in range(1, R + 1)},
                                 NOT_DISTINGUISHED, notes=[f"central character: {exc}"],
                                 timing=time.perf_counter() - t0)
    sol = solve(assemble_chain(pair, R))
    rep = DistinctionReport(params, "ramified", nr, verdict_for(sol.nullity), sol.witness)
    if sol.witness is not None:
        pc = check_propagation_formula(sol)
        rep.residuals["propagation"] = pc.max_residual
        rep.residuals["s0_kernel"] = pc.s0_kernel_residual
    rep.timing = time.perf_counter() - t0
    return rep


# the Steinberg representation of G

def steinberg_pair(q: int, delta: int) -> PairData:
    return pair_from_exponent(q, delta, 1, 0)


@dataclass(frozen=True)
class UnramifiedSystem:
    system: ConstraintSystem
    edge_vector: np.ndarray


def assemble_unramified(tdeg: int, R: int, with_sign: bool = True) -> UnramifiedSystem:
    """Steinberg chain about the midpoint m0 of {s0, s1}.

    Representatives v0 = s0, v1, ..., vR with v_k at distance k + 1/2 from
    m0.  At s0 the edge toward s1 is charted at (0:1), so the stabilizer of
    s0 acts through the group fixing (0:1), as at every other vertex.  The
    uniformizer swaps s0 and s1 and acts by -1 on the edge line, which
    forces 2 phi_{s0}(v) = 0 for the Jacquet vector v at (0:1).
    """
    Q = tdeg - 1
    G = gl2(Q)
    m = SteinbergModel(G, MulCharacter(Q - 1, 0), "St")
    comp = Component("St", "St", (0,), m)
    sys_ = ConstraintSystem(R, _layout([comp], R), [comp])
    lay = sys_.layout
    K = MirabolicLike(G).generators()
    for k in range(R + 1):
        rows = []
        for g in K:
            M = np.zeros((m.dim, sys_.ncols), dtype=complex)
            M[:, lay[(k, "St")]] = m.invariance_rows(g)
            rows.append(M)
        tag = "invariance-at-s0" if k == 0 else "invariance-at-depth-k"
        sys_.add(tag, f"K at v{k}", np.vstack(rows))
    v = m.jacquet_vector(Q)
    if with_sign:
        r = sys_.row()
        r[lay[(0, "St")]] = 2 * v
        sys_.add("uniformizer-shift", "phi(v) = phi(-v) on the edge {s0, s1}", r)
    for k in range(R):
        r = sys_.row()
        r[lay[(k, "St")]] = m.jacquet_vector(0)
        r[lay[(k + 1, "St")]] = -m.jacquet_vector(Q)
        sys_.add("gluing", f"edge v{k}-v{k + 1}", r)
    return UnramifiedSystem(sys_, v)


def steinberg_case(params: FieldParams | None, case: str, tdeg: int | None = None,
                   R: int = 3) -> DistinctionReport:
    t0 = time.perf_counter()
    if case == "ramified":
        if params is None:
            raise ValueError("ramified case needs field parameters")
        rep = analyze_pair(steinberg_pair(params.q, params.delta), R)
        rep.params["steinberg"] = True
        rep.timing = time.perf_counter() - t0
        return rep
    if case != "unramified":
        raise ValueError(f"unknown case {case!r}")
    if tdeg is None:
        raise ValueError("unramified case needs the tree degree tdeg")
    nr = {}
    sign_res = 0.0
    for r in range(1, R + 1):
        us = assemble_unramified(tdeg, r)
        sol = solve(us.system)
        nr[r] = sol.nullity
    # the sign row is what kills the edge line: without it one form survives
    free = solve(assemble_unramified(tdeg, R, with_sign=False).system)
    if free.witness is not None:
        v = assemble_unramified(tdeg, R).edge_vector
        phi_v = complex(free.part(0, "St") @ v)
        sign_res = abs(phi_v)
    rep = DistinctionReport({"tdeg": tdeg, "Q": tdeg - 1, "steinberg": True}, "unramified",
                            nr, verdict_for(nr[R]))
    rep.residuals["nullity_without_sign_row"] = float(free.nullity)
    rep.residuals["edge_value_without_sign_row"] = sign_res
    rep.timing = time.perf_counter() - t0
    return rep


# independent dense oracle

class _OracleGroup:
    """GL2(F_Q) by enumeration, with cosets of B found by membership tests."""

    def __init__(self, Q: int):
        from .ffchar import field
        F = field(Q)
        self.F = F
        self.Q = Q
        els = []
        for a in range(Q):
            for b in range(Q):
                for c in range(Q):
                    for d in range(Q):
                        if F.sub(F.mul(a, d), F.mul(b, c)):
                            els.append((a, b, c, d))
        self.elements = els
        self.reps: list[Mat] = []
        for g in els:
            if all(self._bottom_left(g, r) for r in self.reps):
                self.reps.append(g)
            if len(self.reps) == Q + 1:
                break
        assert len(self.reps) == Q + 1

    def mul(self, g: Mat, h: Mat) -> Mat:
        F = self.F
        return (F.add(F.mul(g[0], h[0]), F.mul(g[1], h[2])), F.add(F.mul(g[0], h[1]), F.mul(g[1], h[3])),
                F.add(F.mul(g[2], h[0]), F.mul(g[3], h[2])), F.add(F.mul(g[2], h[1]), F.mul(g[3], h[3])))

    def inv(self, g: Mat) -> Mat:
        F = self.F
        det = F.sub(F.mul(g[0], g[3]), F.mul(g[1], g[2]))
        di = F.div(1, det)
        return (F.mul(g[3], di), F.mul(F.sub(0, g[1]), di), F.mul(F.sub(0, g[2]), di), F.mul(g[0], di))

    def det(self, g: Mat) -> int:
        F = self.F
        return F.sub(F.mul(g[0], g[3]), F.mul(g[1], g[2]))

    def _bottom_left(self, g: Mat, r: Mat) -> int:
        return self.mul(g, self.inv(r))[2]

    def split(self, g: Mat) -> tuple[Mat, int]:
        for j, r in enumerate(self.reps):
            b = self.mul(g, self.inv(r))
            if b[2] == 0:
                return b, j
        raise AssertionError("element in no coset")


class _OracleInduced:
    """Functions on G with h(bg) = chi1(a) chi2(d) h(g), by right translation,
    optionally scaled by a character of det."""

    def __init__(self, OG: _OracleGroup, val1, val2):
        self.OG = OG
        self.val1 = val1
        self.val2 = val2
        self.dim = OG.Q + 1
        self.twist = None

    def bval(self, b: Mat) -> complex:
        return self.val1(b[0]) * self.val2(b[3])

    def matrix(self, g: Mat) -> np.ndarray:
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for i, r in enumerate(self.OG.reps):
            b, k = self.OG.split(self.OG.mul(r, g))
            M[i, k] = self.bval(b)
        return M

    def value(self, v: np.ndarray, g: Mat) -> complex:
        b, j = self.OG.split(g)
        return self.bval(b) * v[j]


def _oracle_char(F, chi: MulCharacter):
    return lambda x: chi.value(int(F.log[x]))


def _oracle_J(OG: _OracleGroup, U: _OracleInduced, shift_power: int, gens: list[Mat]) -> np.ndarray:
    F = OG.F
    n = U.dim
    blocks = []
    for h in gens:
        hp = tuple(F.power(x, shift_power) for x in h)
        A = U.matrix(h)
        B = U.matrix(hp)  # type: ignore[arg-type]
        # J A - B J = 0, vec(J) column-major
        blocks.append(np.kron(A.T, np.eye(n)) - np.kron(np.eye(n), B))
    N = null_space(np.vstack(blocks))
    if N.shape[1] != 1:
        raise AssertionError(f"intertwiner space has dimension {N.shape[1]}")
    J = N[:, 0].reshape((n, n), order="F")
    # Whittaker line for the additive character x -> exp(2 pi i Tr(x) / p)
    p = F.p

    def tr(x: int) -> int:
        s = 0
        y = x
        for _ in range(F.m):
            s = F.add(s, y)
            y = F.power(y, p)
        return s

    rows = []
    for k in range(F.m):
        u = (1, F.power(F.gen, k), 0, 1)
        mu = np.exp(2j * np.pi * tr(u[1]) / p)
        rows.append(U.matrix(u) - mu * np.eye(n))
    f0 = null_space(np.vstack(rows))
    assert f0.shape[1] == 1
    f0 = f0[:, 0]
    Jf = J @ f0
    k = int(np.argmax(np.abs(f0)))
    return J / (Jf[k] / f0[k])


def brute_force_oracle(pair: PairData, R: int = 1, drop_equivariance: bool = False) -> int:
    """Nullity of the ramified-case system at radius R <= 1, rebuilt densely.

    Steinberg components are realized as twisted Ind(1) modulo constants, so
    a form is a vector on B-cosets with zero sum.  Stabilizers are the full
    subgroups found by enumeration: the centralizer of [[0, a], [1, 0]]
    (a = alpha^2) at s0 and {g : b = 0, a = d} at s1.
    """
    if R not in (0, 1):
        raise ValueError("the oracle handles R <= 1")
    if pair.Q > 9:
        raise ValueError("the oracle is limited to Q <= 9")
    if pair.f > 2:
        raise ValueError("the oracle covers f <= 2")
    if pair.central_obstruction():
        return 0
    from .ffchar import extension
    Q, q, f = pair.Q, pair.q, pair.f
    OG = _OracleGroup(Q)
    F = OG.F
    a2 = extension(Q).alpha_sq
    t0 = (0, a2, 1, 0)
    torus = [g for g in OG.elements if OG.mul(g, t0) == OG.mul(t0, g)]
    assert len(torus) == Q * Q - 1
    Ks1 = [g for g in OG.elements if g[1] == 0 and g[0] == g[3]]
    w = (0, 1, 1, 0)
    e_pow = (Q - 1) // (q - 1)

    models: list[tuple[str, _OracleInduced]] = []
    for nu in range(f):
        chi = pair.chi0_nu(nu)
        # twisted Ind(1): h(bg) = h(g), action scaled by chi0^{Phi^nu}(N(det g))
        m = _OracleInduced(OG, lambda x: 1.0, lambda x: 1.0)
        m.twist = (lambda chi: lambda x: chi.value(int(F.log[F.power(x, e_pow)])))(chi)
        models.append((f"W{nu}", m))
    for n1 in range(f):
        for n2 in range(n1 + 1, f):
            U = _OracleInduced(OG, _oracle_char(F, pair.chi0_nu(n1)), _oracle_char(F, pair.chi0_nu(n2)))
            models.append((f"U{n1},{n2}", U))

    def rep_matrix(m: _OracleInduced, g: Mat) -> np.ndarray:
        M = m.matrix(g)
        return M * m.twist(OG.det(g)) if m.twist else M

    layout = {}
    pos = 0
    for k in range(R + 1):
        for lab, m in models:
            layout[(k, lab)] = slice(pos, pos + m.dim)
            pos += m.dim
    n = pos
    rows: list[np.ndarray] = []

    def put(blocks: dict[tuple[int, str], np.ndarray]) -> None:
        h = max(b.shape[0] for b in blocks.values())
        M = np.zeros((h, n), dtype=complex)
        for key, b in blocks.items():
            M[:, layout[key]] = b
        rows.append(M)

    for k in range(R + 1):
        for lab, m in models:
            if m.twist:
                put({(k, lab): np.ones((1, m.dim))})
    if not drop_equivariance:
        for lab, m in models:
            for g in torus:
                put({(0, lab): rep_matrix(m, g).T - np.eye(m.dim)})
            if R:
                for g in Ks1:
                    put({(1, lab): rep_matrix(m, g).T - np.eye(m.dim)})
    st = [lab for lab, m in models if m.twist]
    for a, b in zip(st, st[1:]):
        d = models[0][1].dim
        put({(0, a): np.eye(d), (0, b): -np.eye(d)})
    if f == 2:
        lab, U = models[-1]
        gens = [(F.gen, 0, 0, 1), (1, 0, 0, F.gen), w] + [(1, F.power(F.gen, k), 0, 1) for k in range(F.m)]
        J = _oracle_J(OG, U, q ** (f // 2), gens)
        zeta = turn(pair.zeta())
        put({(0, lab): np.eye(U.dim) - zeta * J.T})
    if R:
        for lab, m in models:
            if m.twist:
                a = np.zeros(m.dim)
                a[OG.split((1, 0, 0, 1))[1]] = 1.0
                b = np.zeros(m.dim)
                b[OG.split(w)[1]] = 1.0
                put({(0, lab): a[None, :], (1, lab): -b[None, :]})
            else:
                up = _jacquet_pair(OG, m, upper=True)
                low = _jacquet_pair(OG, m, upper=False)
                for x, y in zip(up, low):
                    put({(0, lab): x[None, :], (1, lab): -y[None, :]})
    A = np.vstack(rows)
    return int(null_space(A, n).shape[1])


def _jacquet_pair(OG: _OracleGroup, m: _OracleInduced, upper: bool) -> list[np.ndarray]:
    """(chi line, chi^w line) of the unipotent invariants, valued 1 at 1 and at w."""
    F = OG.F
    if upper:
        gens = [(1, F.power(F.gen, k), 0, 1) for k in range(F.m)]
    else:
        gens = [(1, 0, F.power(F.gen, k), 1) for k in range(F.m)]
    N = null_space(np.vstack([m.matrix(u) - np.eye(m.dim) for u in gens]))
    assert N.shape[1] == 2
    one, w = (1, 0, 0, 1), (0, 1, 1, 0)
    j1 = OG.split(one)[1]
    jw = OG.split(w)[1]
    others = [k for k in range(m.dim) if k != (j1 if upper else jw)]
    supported = N @ null_space(N[others, :])[:, 0]
    vanishing = N @ null_space(N[[j1 if upper else jw], :])[:, 0]
    # upper side: chi line lives on B; lower side: chi^w line lives on Bw
    a, b = (supported, vanishing) if upper else (vanishing, supported)
    return [a / m.value(a, one), b / m.value(b, w)]
