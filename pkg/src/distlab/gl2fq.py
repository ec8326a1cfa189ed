"""GL2 over F_Q: Bruhat cells, the projective line and the nonsplit torus.

Matrices are 4-tuples (a, b, c, d) of field elements, read row by row.
Points of P^1 are column lines (x:y) normalized so that the first nonzero
coordinate is 1.  They are indexed as (1:0), (1:1), ..., (1:Q-1), (0:1)
following the integer encoding of field elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .ffchar import FiniteField, QuadraticExtension, extension, field

Mat = tuple[int, int, int, int]


@dataclass(frozen=True)
class Borel:
    b: Mat


@dataclass(frozen=True)
class Cell:
    t: Mat
    u1: Mat
    w: Mat
    u2: Mat


class GL2:
    def __init__(self, Q: int):
        self.F: FiniteField = field(Q)
        self.Q = Q
        F = self.F
        self.one = 1
        self.identity: Mat = (1, 0, 0, 1)
        self.w: Mat = (0, 1, 1, 0)
        self.points: list[tuple[int, int]] = [(1, c) for c in range(Q)] + [(0, 1)]
        self.point_index = {pt: i for i, pt in enumerate(self.points)}
        self.base_point = 0
        self.infinity = Q
        self._add = F.add_table
        self._mul = F.mul_table

    @property
    def order(self) -> int:
        Q = self.Q
        return (Q * Q - 1) * (Q * Q - Q)

    def mul(self, g: Mat, h: Mat) -> Mat:
        A, M = self._add, self._mul
        a, b, c, d = g
        e, f, x, y = h
        return (int(A[M[a, e], M[b, x]]), int(A[M[a, f], M[b, y]]),
                int(A[M[c, e], M[d, x]]), int(A[M[c, f], M[d, y]]))

    def det(self, g: Mat) -> int:
        F = self.F
        return F.sub(F.mul(g[0], g[3]), F.mul(g[1], g[2]))

    def inv(self, g: Mat) -> Mat:
        F = self.F
        di = int(F.inv[self.det(g)])
        a, b, c, d = g
        return (F.mul(d, di), F.mul(int(F.neg[b]), di), F.mul(int(F.neg[c]), di), F.mul(a, di))

    def scalar(self, u: int) -> Mat:
        return (u, 0, 0, u)

    def diag(self, a: int, d: int) -> Mat:
        return (a, 0, 0, d)

    def upper(self, x: int) -> Mat:
        return (1, x, 0, 1)

    def lower(self, x: int) -> Mat:
        return (1, 0, x, 1)

    def is_borel(self, g: Mat) -> bool:
        return g[2] == 0

    def frob(self, g: Mat, k: int) -> Mat:
        """Entrywise x -> x^(p^k)."""
        F = self.F
        return tuple(F.frob(x, k) for x in g)  # type: ignore[return-value]

    def elements(self) -> Iterator[Mat]:
        Q = self.Q
        for a in range(Q):
            for b in range(Q):
                for c in range(Q):
                    for d in range(Q):
                        g = (a, b, c, d)
                        if self.det(g):
                            yield g

    def borel_elements(self) -> Iterator[Mat]:
        Q = self.Q
        for a in range(1, Q):
            for b in range(Q):
                for d in range(1, Q):
                    yield (a, b, 0, d)

    # projective line
    def normalize(self, x: int, y: int) -> int:
        F = self.F
        if x:
            return self.point_index[(1, F.div(y, x))]
        if y:
            return self.infinity
        raise ValueError("(0:0) is not a point")

    def act(self, g: Mat, i: int) -> int:
        F = self.F
        x, y = self.points[i]
        return self.normalize(F.add(F.mul(g[0], x), F.mul(g[1], y)),
                              F.add(F.mul(g[2], x), F.mul(g[3], y)))

    def perm(self, g: Mat) -> np.ndarray:
        return np.array([self.act(g, i) for i in range(self.Q + 1)], dtype=np.int64)

    # cosets B\G, indexed by the line of the bottom row
    def coset_rep(self, i: int) -> Mat:
        """Representative with bottom row on the i-th line."""
        x, y = self.points[i]
        if x == 0:
            return self.identity
        return (0, int(self.F.neg[1]), 1, y)

    def coset_of(self, g: Mat) -> int:
        return self.normalize(g[2], g[3])

    def split_coset(self, g: Mat) -> tuple[Mat, int]:
        """g = b * rep_j with b upper triangular."""
        j = self.coset_of(g)
        b = self.mul(g, self.inv(self.coset_rep(j)))
        assert b[2] == 0
        return b, j


@lru_cache(maxsize=None)
def gl2(Q: int) -> GL2:
    return GL2(Q)


def bruhat_decompose(G: GL2, g: Mat) -> Borel | Cell:
    """g = b, or g = t u1 w u2 with t diagonal and u1, u2 upper unipotent."""
    F = G.F
    a, b, c, d = g
    if c == 0:
        return Borel(g)
    y = F.div(d, c)
    t1 = F.div(int(F.neg[G.det(g)]), c)
    x = F.div(a, t1)
    return Cell(G.diag(t1, c), G.upper(x), G.w, G.upper(y))


class NonsplitTorus:
    """Image of F_{Q^2}^x in GL2(F_Q) via x + alpha*y -> [[x, alpha^2 y], [y, x]]."""

    def __init__(self, G: GL2):
        self.G = G
        self.ext: QuadraticExtension = extension(G.Q)
        self.alpha_sq = self.ext.alpha_sq

    def matrix(self, z: tuple[int, int]) -> Mat:
        x, y = z
        return (x, self.G.F.mul(self.alpha_sq, y), y, x)

    @property
    def order(self) -> int:
        return self.G.Q ** 2 - 1

    def generator(self) -> Mat:
        return self.matrix(self.ext.gen)

    def elements(self) -> list[Mat]:
        return [self.matrix(z) for z in self.ext.exp]

    def log(self, g: Mat) -> int:
        return self.ext.log[(g[0], g[2])]

    def coset_reps(self) -> list[Mat]:
        """One element per coset mod the center, the i-th sending the base point to point i."""
        return [self.matrix(pt) for pt in self.G.points]


def torus_acts_simply_transitively(Q: int) -> tuple[bool, dict[int, Mat]]:
    G = gl2(Q)
    T = NonsplitTorus(G)
    base = G.base_point
    table: dict[int, Mat] = {}
    stab = []
    for g in T.elements():
        i = G.act(g, base)
        if i == base:
            stab.append(g)
        table.setdefault(i, g)
    assert len(table) == Q + 1, "torus is not transitive on P^1"
    assert all(g[1] == 0 and g[2] == 0 for g in stab), "stabilizer exceeds the center"
    assert len(stab) == Q - 1
    # free action of T/Z: each coset representative moves every point
    for i, g in T_cosets(T):
        if i != base:
            for j in range(Q + 1):
                assert G.act(g, j) != j, "nontrivial coset has a fixed point"
    return True, table


def T_cosets(T: NonsplitTorus) -> list[tuple[int, Mat]]:
    return [(i, g) for i, g in enumerate(T.coset_reps())]


def norm_to_k_square_class(T: NonsplitTorus, g: Mat, q: int) -> int:
    """+1 if N_{k_D/k}(g) is a square of F_q^x, else -1."""
    ext = T.ext
    Q = ext.Q
    z = (g[0], g[2])
    n = ext.power(z, (Q * Q - 1) // (q - 1))
    assert n[1] == 0
    F = ext.base
    step = (Q - 1) // (q - 1)
    lg = int(F.log[n[0]])
    assert lg % step == 0, "norm does not land in the subfield"
    return 1 if (lg // step) % 2 == 0 else -1


def square_classes(Q: int, q: int) -> list[int]:
    """Square class of the norm for the coset sending the base point to each point."""
    T = NonsplitTorus(gl2(Q))
    return [norm_to_k_square_class(T, g, q) for g in T.coset_reps()]


def count_square_norm_cosets(Q: int, q: int) -> int:
    return sum(1 for s in square_classes(Q, q) if s == 1)


class MirabolicLike:
    """K = { u [[1, 0], [w, 1]] }: fixes the point (0:1)."""

    def __init__(self, G: GL2):
        self.G = G

    @property
    def order(self) -> int:
        return self.G.Q * (self.G.Q - 1)

    def elements(self) -> list[Mat]:
        F = self.G.F
        return [(u, 0, F.mul(u, w), u) for u in range(1, self.G.Q) for w in range(self.G.Q)]

    def generators(self) -> list[Mat]:
        G = self.G
        return [G.scalar(G.F.gen)] + [G.lower(e) for e in G.F.additive_basis()]


def upper_unipotent(G: GL2) -> list[Mat]:
    return [G.upper(x) for x in range(G.Q)]


def lower_unipotent(G: GL2) -> list[Mat]:
    return [G.lower(x) for x in range(G.Q)]


def diagonal_torus(G: GL2) -> list[Mat]:
    return [G.diag(a, d) for a in range(1, G.Q) for d in range(1, G.Q)]


def group_generators(G: GL2) -> list[Mat]:
    F = G.F
    gens = [G.diag(F.gen, 1), G.diag(1, F.gen), G.w]
    gens += [G.upper(e) for e in F.additive_basis()]
    return gens
