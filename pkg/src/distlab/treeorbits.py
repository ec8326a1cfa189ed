"""Truncated (Q+1)-regular tree with P^1 charts and orbit classes.

The tree is abstract.  Vertex 0 is the root s0.  At s0 the edge toward the
child s1 carries the point (1:0); every other vertex sees its parent through
the point (0:1) (the last point) and its children through the remaining Q
points.  Along the chain s0, s1, s2, ... each s_{k+1} hangs off s_k at (1:0).

Orbit classes are model axioms: spheres about s0 in the ramified case and
spheres of half-integer radius about the midpoint of {s0, s1} in the
unramified case.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

import numpy as np

SIZE_CAP = 10 ** 6


class SizeCap(ValueError):
    pass


@dataclass(frozen=True)
class OrbitClass:
    case: str
    radius: Fraction
    via_units: bool = False


def tree_size(Q: int, R: int) -> int:
    return 1 + (Q + 1) * sum(Q ** j for j in range(R))


class TruncatedTree:
    def __init__(self, Q: int, R: int, case: str = "ramified"):
        if R < 1:
            raise ValueError("radius must be >= 1")
        if case not in ("ramified", "unramified"):
            raise ValueError(f"unknown case {case!r}")
        n = tree_size(Q, R)
        if n > SIZE_CAP:
            raise SizeCap(f"{n} vertices exceed the cap of {SIZE_CAP}")
        self.Q = Q
        self.R = R
        self.case = case
        self.degree = Q + 1
        parent = np.full(n, -1, dtype=np.int64)
        droite = np.full(n, -1, dtype=np.int64)  # point of the parent's chart
        depth = np.zeros(n, dtype=np.int64)
        children: list[list[int]] = [[] for _ in range(n)]
        nxt = 1
        frontier = [0]
        for k in range(R):
            new = []
            for v in frontier:
                slots = range(Q + 1) if v == 0 else range(Q)
                for i in slots:
                    parent[nxt] = v
                    droite[nxt] = i
                    depth[nxt] = k + 1
                    children[v].append(nxt)
                    new.append(nxt)
                    nxt += 1
            frontier = new
        assert nxt == n
        self.parent = parent
        self.droite = droite
        self.depth = depth
        self.children = children
        self.size = n

    @property
    def root(self) -> int:
        return 0

    def parent_point(self, v: int) -> int | None:
        """Chart index of the edge toward the root (None at s0)."""
        return None if v == 0 else self.Q

    def is_boundary(self, v: int) -> bool:
        """Leaves at depth R carry virtual edges."""
        return int(self.depth[v]) == self.R

    def chart(self, v: int) -> dict[int, int | None]:
        """Map chart point -> neighbouring vertex (None for a virtual edge)."""
        out: dict[int, int | None] = {}
        if v:
            out[self.Q] = int(self.parent[v])
        for c in self.children[v]:
            out[int(self.droite[c])] = c
        slots = range(self.Q + 1) if v == 0 else range(self.Q)
        for i in slots:
            out.setdefault(i, None)
        return out

    def chain(self) -> list[int]:
        """s0, s1, ..., sR along the (1:0) children."""
        out = [0]
        v = 0
        for _ in range(self.R):
            v = next(c for c in self.children[v] if self.droite[c] == 0)
            out.append(v)
        return out

    def ancestors(self, v: int) -> list[int]:
        path = [v]
        while v:
            v = int(self.parent[v])
            path.append(v)
        return path

    def geodesic(self, s: int, t: int) -> list[int]:
        a = self.ancestors(s)
        b = self.ancestors(t)
        sb = set(b)
        lca = next(x for x in a if x in sb)
        up = a[:a.index(lca) + 1]
        down = b[:b.index(lca)]
        return up + down[::-1]

    def distance(self, s: int, t: int) -> int:
        return len(self.geodesic(s, t)) - 1

    def orbit_of(self, v: int) -> OrbitClass:
        if self.case == "ramified":
            return OrbitClass("ramified", Fraction(int(self.depth[v])), True)
        s1 = self.chain()[1]
        d1 = self.distance(v, s1)
        d0 = int(self.depth[v])
        return OrbitClass("unramified", Fraction(min(d0, d1)) + Fraction(1, 2))

    def export_edges(self, out: TextIO) -> None:
        for v in range(1, self.size):
            out.write(f"{int(self.parent[v])} {v} {int(self.droite[v])}\n")


def build_tree(Q: int, R: int, case: str = "ramified") -> TruncatedTree:
    return TruncatedTree(Q, R, case)
