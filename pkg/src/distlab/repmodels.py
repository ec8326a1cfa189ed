"""Matrix models for the components of the residual representation at a vertex.

Two kinds of component occur:

* SteinbergModel: zero-sum functions on P^1 twisted by a character of det.
  Coordinates of h are its values at the points 1..Q (point 0 is the base
  point (1:0), whose value is minus the sum of the others).  A linear form
  is stored by its values on the basis e_i = delta_i - delta_0, that is
  phi~(x_i) - phi~(x_0).
* InducedModel: functions on GL2 with h(bg) = chi(b) h(g), acting by right
  translation.  Coordinates are the values at the fixed coset
  representatives; a linear form is a vector of the same length.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ffchar import MulCharacter, PairData, is_trivial_on_subfield
from .gl2fq import GL2, Cell, Mat, NonsplitTorus, bruhat_decompose, gl2

RANK_TOL = 1e-9


class IntegralityViolation(ArithmeticError):
    pass


class DimensionMismatch(ArithmeticError):
    pass


class NormalizationFailure(ArithmeticError):
    pass


def numeric_rank(m: np.ndarray, tol: float = RANK_TOL) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def null_space(m: np.ndarray, ncols: int | None = None, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel."""
    n = m.shape[1] if ncols is None else ncols
    if m.size == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(m, full_matrices=m.shape[0] < n)
    r = int(np.sum(s > tol * max(1.0, s[0]))) if s.size else 0
    return vh[r:].conj().T


def frob_q(G: GL2, g: Mat, q: int, k: int) -> Mat:
    """Entrywise x -> x^(q^k)."""
    m0 = 0
    while G.F.p ** m0 != q:
        m0 += 1
    return G.frob(g, (k * m0) % G.F.m)


class SteinbergModel:
    def __init__(self, G: GL2, twist: MulCharacter, label: str = "St"):
        if twist.N != G.Q - 1:
            raise ValueError("twist must be a character of F_Q^x")
        self.G = G
        self.twist = twist
        self.label = label
        self.dim = G.Q
        self.npoints = G.Q + 1

    def scale(self, g: Mat) -> complex:
        return self.twist.value(int(self.G.F.log[self.G.det(g)]))

    def matrix(self, g: Mat) -> np.ndarray:
        G = self.G
        p = G.perm(g)
        s = self.scale(g)
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for j in range(1, self.npoints):
            if p[j]:
                M[p[j] - 1, j - 1] += s
            if p[0]:
                M[p[0] - 1, j - 1] -= s
        return M

    def character(self, g: Mat) -> complex:
        p = self.G.perm(g)
        return self.scale(g) * (int(np.sum(p == np.arange(self.npoints))) - 1)

    def coords(self, h: np.ndarray) -> np.ndarray:
        """Coordinates of a zero-sum function given by its values on all of P^1."""
        h = np.asarray(h, dtype=complex)
        assert abs(h.sum()) < 1e-9, "function is not zero-sum"
        return h[1:]

    def function(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        return np.concatenate([[-v.sum()], v])

    def jacquet_vector(self, d: int) -> np.ndarray:
        """1 at the point d, -1/Q elsewhere: spans the functions constant off d."""
        h = np.full(self.npoints, -1.0 / (self.npoints - 1), dtype=complex)
        h[d] = 1.0
        return self.coords(h)

    def invariance_rows(self, g: Mat) -> np.ndarray:
        return self.matrix(g).T - np.eye(self.dim)

    def frobenius_intertwiner(self, q: int) -> np.ndarray:
        """h -> h o Phi^{-1} in coordinates (Phi fixes the base point)."""
        G = self.G
        T = np.zeros((self.dim, self.dim), dtype=complex)
        for i in range(1, self.npoints):
            x, y = G.points[i]
            j = G.normalize(*(G.F.frob(c, _log_p(G, q)) for c in (x, y)))
            # (h o Phi^-1)(Phi(x_i)) = h(x_i)
            T[j - 1, i - 1] = 1.0
        return T


def _log_p(G: GL2, q: int) -> int:
    m0 = 0
    while G.F.p ** m0 != q:
        m0 += 1
    return m0


class InducedModel:
    def __init__(self, G: GL2, chi1: MulCharacter, chi2: MulCharacter, label: str = "Ind"):
        if chi1.N != G.Q - 1 or chi2.N != G.Q - 1:
            raise ValueError("inducing characters must live on F_Q^x")
        self.G = G
        self.chi1 = chi1
        self.chi2 = chi2
        self.label = label
        self.dim = G.Q + 1
        self.reps = [G.coset_rep(i) for i in range(self.dim)]

    def borel_value(self, b: Mat, swapped: bool = False) -> complex:
        F = self.G.F
        la, ld = int(F.log[b[0]]), int(F.log[b[3]])
        if swapped:
            return self.chi2.value(la) * self.chi1.value(ld)
        return self.chi1.value(la) * self.chi2.value(ld)

    def decompose_row(self, g: Mat) -> list[tuple[int, Mat]]:
        """For each i, rep_i g = b_i rep_{k_i}."""
        return [self.G.split_coset(self.G.mul(r, g))[::-1] for r in self.reps]

    def matrix(self, g: Mat) -> np.ndarray:
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for i, (k, b) in enumerate(self.decompose_row(g)):
            M[i, k] = self.borel_value(b)
        return M

    def character(self, g: Mat) -> complex:
        return sum(self.borel_value(b) for i, (k, b) in enumerate(self.decompose_row(g)) if k == i)

    def evaluate(self, v: np.ndarray, g: Mat, swapped: bool = False) -> complex:
        b, j = self.G.split_coset(g)
        return self.borel_value(b, swapped) * v[j]

    def vector_from_support(self, elements: Iterable[Mat]) -> np.ndarray:
        """The function with value 1 at each listed element (one per coset)."""
        v = np.zeros(self.dim, dtype=complex)
        for g in elements:
            b, j = self.G.split_coset(g)
            v[j] = 1.0 / self.borel_value(b)
        return v

    def jacquet_upper(self) -> tuple[np.ndarray, np.ndarray]:
        """Invariants of the upper unipotent group: (chi line at 1, chi^w line at w)."""
        G = self.G
        e1 = self.vector_from_support([G.identity])
        ew = self.vector_from_support([G.mul(G.w, G.upper(x)) for x in range(G.Q)])
        return e1, ew

    def jacquet_lower(self) -> tuple[np.ndarray, np.ndarray]:
        """Invariants of the lower unipotent group: (chi line at 1, chi^w line at w)."""
        G = self.G
        e1 = self.vector_from_support([G.lower(x) for x in range(G.Q)])
        ew = self.vector_from_support([G.w])
        return e1, ew

    def invariance_rows(self, g: Mat) -> np.ndarray:
        return self.matrix(g).T - np.eye(self.dim)


def steinberg_twist(pair: PairData, nu: int) -> MulCharacter:
    """Twist of the nu-th Steinberg component, as a character of det in F_Q^x.

    chi0^{Phi^nu} is restricted to k^x and composed with N_{k_Delta/k}, so that
    on the nonsplit torus it reads chi0^{Phi^nu}(N_{k_D/k}(x)).
    """
    Q, q = pair.Q, pair.q
    b = pair.chi0_nu(nu).exponent
    return MulCharacter(Q - 1, (b % (q - 1)) * ((Q - 1) // (q - 1)))


@dataclass(frozen=True)
class Component:
    label: str
    kind: str  # "St" or "Ind"
    nus: tuple[int, ...]
    model: SteinbergModel | InducedModel

    @property
    def dim(self) -> int:
        return self.model.dim


def decompose_Vs(pair: PairData) -> list[Component]:
    G = gl2(pair.Q)
    out: list[Component] = []
    for nu in range(pair.f):
        lab = f"W{nu}"
        out.append(Component(lab, "St", (nu,), SteinbergModel(G, steinberg_twist(pair, nu), lab)))
    for n1 in range(pair.f):
        for n2 in range(n1 + 1, pair.f):
            lab = f"U{n1},{n2}"
            m = InducedModel(G, pair.chi0_nu(n1), pair.chi0_nu(n2), lab)
            out.append(Component(lab, "Ind", (n1, n2), m))
    return out


def character_average(model: SteinbergModel | InducedModel, elements: Sequence[Mat]) -> complex:
    return sum(model.character(h) for h in elements) / len(elements)


def invariant_dim(model: SteinbergModel | InducedModel, elements: Sequence[Mat]) -> int:
    """Dimension of the H-fixed vectors, by projector rank and by character sum."""
    P = np.zeros((model.dim, model.dim), dtype=complex)
    for h in elements:
        P += model.matrix(h)
    P /= len(elements)
    rank = numeric_rank(P)
    avg = character_average(model, elements)
    n = round(avg.real)
    if abs(avg - n) > 1e-6:
        raise IntegralityViolation(f"character sum {avg} is not an integer")
    if n != rank:
        raise DimensionMismatch(f"projector rank {rank} != character sum {n}")
    return rank


class SubgroupAction:
    """Coset and Borel data of every element of a subgroup, computed once so
    that invariant dimensions can be counted for many characters at a time."""

    def __init__(self, G: GL2, elements: Sequence[Mat]):
        self.G = G
        self.n = len(elements)
        F = G.F
        reps = [G.coset_rep(i) for i in range(G.Q + 1)]
        self.perm = np.array([G.perm(g) for g in elements])
        self.det_log = np.array([int(F.log[G.det(g)]) for g in elements])
        k = np.zeros((self.n, G.Q + 1), dtype=np.int64)
        la = np.zeros_like(k)
        ld = np.zeros_like(k)
        for t, g in enumerate(elements):
            for i, r in enumerate(reps):
                b, j = G.split_coset(G.mul(r, g))
                k[t, i], la[t, i], ld[t, i] = j, int(F.log[b[0]]), int(F.log[b[3]])
        self.k, self.la, self.ld = k, la, ld

    def _check(self, rank: int, avg: complex) -> int:
        n = round(avg.real)
        if abs(avg - n) > 1e-6:
            raise IntegralityViolation(f"character sum {avg} is not an integer")
        if n != rank:
            raise DimensionMismatch(f"projector rank {rank} != character sum {n}")
        return rank

    def induced_dim(self, chi1: MulCharacter, chi2: MulCharacter) -> int:
        vals = chi1.values(self.la) * chi2.values(self.ld)
        m = self.k.shape[1]
        P = np.zeros((m, m), dtype=complex)
        rows = np.broadcast_to(np.arange(m), self.k.shape)
        np.add.at(P, (rows, self.k), vals)
        P /= self.n
        fixed = self.k == np.arange(m)
        avg = complex(np.sum(vals * fixed)) / self.n
        return self._check(numeric_rank(P), avg)

    def steinberg_dim(self, twist: MulCharacter) -> int:
        s = twist.values(self.det_log)
        m = self.perm.shape[1]
        # permutation representation minus the trivial line
        P = np.zeros((m, m), dtype=complex)
        cols = np.broadcast_to(np.arange(m), self.perm.shape)
        np.add.at(P, (self.perm, cols), np.broadcast_to(s[:, None], self.perm.shape))
        P /= self.n
        fixed = np.sum(self.perm == np.arange(m), axis=1) - 1
        avg = complex(np.sum(s * fixed)) / self.n
        ones = np.ones(m) / np.sqrt(m)
        Pst = P - np.outer(P @ ones, ones)
        return self._check(numeric_rank(Pst), avg)


def to_fraction(z: complex, tol: float = 1e-8) -> Fraction:
    if abs(z.imag) > tol:
        raise IntegralityViolation(f"expected a real number, got {z}")
    fr = Fraction(z.real).limit_denominator(10 ** 6)
    if abs(float(fr) - z.real) > tol:
        raise IntegralityViolation(f"{z} is not close to a rational")
    return fr


def inner_product_trivial_on_Ks1(model: InducedModel) -> Fraction:
    from .gl2fq import MirabolicLike
    K = MirabolicLike(model.G).elements()
    return to_fraction(character_average(model, K))


@dataclass(frozen=True)
class HalfShiftResult:
    trivial_pairs: tuple[tuple[int, int], ...]
    consistent: bool


def triviality_forces_halfshift(chi0: MulCharacter, f: int, q: int) -> HalfShiftResult:
    """Which products chi0^{Phi^n1} chi0^{Phi^n2} are trivial on F_Q^x, and
    whether each such pair is a half shift with chi0 trivial on k_{f/2}^x."""
    found = []
    ok = True
    for n1 in range(f):
        for n2 in range(n1 + 1, f):
            prod = chi0.frobenius(q, n1) * chi0.frobenius(q, n2)
            if prod.is_trivial():
                found.append((n1, n2))
                good = (f % 2 == 0 and n2 == n1 + f // 2
                        and is_trivial_on_subfield(chi0, q ** (f // 2)))
                ok = ok and good
    return HalfShiftResult(tuple(found), ok)


def additive_character(G: GL2, x: int) -> complex:
    p = G.F.p
    return np.exp(2j * np.pi * G.F.trace_to_prime(x) / p)


def whittaker_vector(model: InducedModel) -> np.ndarray:
    """f0(t u1 w u2) = chi(t) mu(u2), f0 = 0 on B."""
    G = model.G
    v = np.zeros(model.dim, dtype=complex)
    for j, r in enumerate(model.reps):
        cell = bruhat_decompose(G, r)
        if isinstance(cell, Cell):
            v[j] = model.borel_value(cell.t) * additive_character(G, cell.u2[1])
    return v


@dataclass(frozen=True)
class IntertwinerJ:
    matrix: np.ndarray
    L: np.ndarray
    I: np.ndarray
    zeta: Fraction
    F_w: complex
    raw_eigenvalue: complex
    shift: int


def intertwining_kernel(model: InducedModel, g: Mat, F_w: complex) -> complex:
    """F in D: F(b1 w b2) = chi^w(b1) chi(b2) F(w), zero on B."""
    cell = bruhat_decompose(model.G, g)
    if not isinstance(cell, Cell):
        return 0.0
    return model.borel_value(cell.t, swapped=True) * F_w


def build_J(model: InducedModel, pair: PairData) -> IntertwinerJ:
    if pair.f % 2:
        raise ValueError("J exists only for f even")
    G = model.G
    Q, q = pair.Q, pair.q
    half = pair.f // 2
    n = model.dim
    L = np.zeros((n, n), dtype=complex)
    for i, ri in enumerate(model.reps):
        for j, rj in enumerate(model.reps):
            L[i, j] = intertwining_kernel(model, G.mul(ri, G.inv(rj)), -(Q + 1))
    L /= Q + 1  # |B|/|G|
    # I(f)(x) = f(Phi^{-f/2}(x)), f in the chi^w-induced space
    I = np.zeros((n, n), dtype=complex)
    for i, ri in enumerate(model.reps):
        g = frob_q(G, ri, q, -half)
        b, j = G.split_coset(g)
        I[i, j] = model.borel_value(b, swapped=True)
    J = I @ L
    f0 = whittaker_vector(model)
    # F(w) = -(Q+1) makes f0 an eigenvector with a Gauss-sum eigenvalue of
    # modulus sqrt(Q); rescale the kernel so that J f0 = f0.
    k = int(np.argmax(np.abs(f0)))
    lam = (J @ f0)[k] / f0[k]
    if abs(lam) < 1e-9:
        raise NormalizationFailure("f0 is killed by the unnormalized J")
    J = J / lam
    L = L / lam
    if not np.allclose(J @ f0, f0, atol=1e-9):
        raise NormalizationFailure("J f0 != f0")
    return IntertwinerJ(J, L, I, pair.zeta(), complex(-(Q + 1) / lam), complex(lam), half)


def check_J_intertwines(model: InducedModel, J: IntertwinerJ, q: int, h: Mat) -> float:
    G = model.G
    lhs = J.matrix @ model.matrix(h)
    rhs = model.matrix(frob_q(G, h, q, J.shift)) @ J.matrix
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class S12Result:
    S1: complex
    S2: complex
    phi_ftilde: complex
    orthogonality: complex
    fiber_counts: tuple[int, ...]
    invariant_S1: complex
    invariant_S2: complex
    target: complex

    @property
    def invariant_total(self) -> complex:
        return self.invariant_S1 + self.invariant_S2


def s1_s2_vanishing(model: InducedModel, J: IntertwinerJ) -> S12Result:
    """Brute-force evaluation of phi(J f~) over the two pieces of G minus B.

    X1 = {A = 0}, X2 = {A != 0, C != 0}.  S1, S2 use phi~(x b) = chi^{-1}(b)
    with x in the nonsplit torus on the left, which is the form in which the
    sums factor through sum_B chi1/chi2(B).  The invariant_* fields use
    phi~(b x) = chi^{-1}(b) instead, the order for which
    phi(h) = sum_g h(g) phi~(g) is actually invariant under the torus acting
    by right translation; target is the value zeta^{-1} phi(f~) that
    J-fixedness would force.
    """
    G = model.G
    F = G.F
    Q = G.Q
    T = NonsplitTorus(G)
    a2 = T.alpha_sq

    def phi_left(g: Mat) -> complex:
        # g = x b with x sending (1:0) to the first column of g
        x = T.matrix((g[0], g[2]))
        b = G.mul(G.inv(x), g)
        assert b[2] == 0 and b[0] == 1
        return 1.0 / model.borel_value(b)

    def phi_right(g: Mat) -> complex:
        # g = b x with x having the bottom row of g
        c, d = g[2], g[3]
        x = (d, F.mul(a2, c), c, d)
        b = G.mul(g, G.inv(x))
        assert b[2] == 0 and b[3] == 1
        return 1.0 / model.borel_value(b)

    nB = (Q - 1) ** 2 * Q
    ft = np.zeros(model.dim, dtype=complex)
    ft[G.coset_of(G.identity)] = 1.0 / nB
    Jft = J.matrix @ ft
    phi_ft = sum(phi_right(b) * model.evaluate(ft, b) for b in G.borel_elements())
    sums = np.zeros(4, dtype=complex)
    for A in range(Q):
        for C in range(1, Q):
            for B_ in range(Q):
                for D in range(Q):
                    g = (A, B_, C, D)
                    if not G.det(g):
                        continue
                    val = model.evaluate(Jft, g)
                    k = 0 if A == 0 else 1
                    sums[k] += phi_left(g) * val
                    sums[2 + k] += phi_right(g) * val
    ratio = model.chi1 * model.chi2.inverse()
    orth = sum(ratio.value(k) for k in range(Q - 1))
    counts = set()
    for A in range(1, Q):
        for C in range(1, Q):
            for s_ in range(1, Q):
                counts.add(sum(1 for B_ in range(Q) for D in range(Q)
                               if F.sub(F.mul(A, D), F.mul(B_, C)) == s_))
    from .ffchar import turn
    target = turn(-J.zeta) * phi_ft
    return S12Result(complex(sums[0]), complex(sums[1]), complex(phi_ft), complex(orth),
                     tuple(sorted(counts)), complex(sums[2]), complex(sums[3]), complex(target))
