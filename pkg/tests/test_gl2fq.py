from __future__ import annotations

import numpy as np
import pytest

from distlab.ffchar import extension, field
from distlab.gl2fq import (
    Borel, Cell, MirabolicLike, NonsplitTorus, bruhat_decompose, count_square_norm_cosets,
    diagonal_torus, gl2, group_generators, lower_unipotent, norm_to_k_square_class,
    square_classes, torus_acts_simply_transitively, upper_unipotent,
)


def _closure(G, gens):
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = G.mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


@pytest.mark.parametrize("Q", [3, 4, 5, 7])
def test_group_order(Q):
    G = gl2(Q)
    assert sum(1 for _ in G.elements()) == G.order == (Q * Q - 1) * (Q * Q - Q)


def test_group_laws_Q5():
    G = gl2(5)
    rng = np.random.default_rng(1)
    els = list(G.elements())
    for _ in range(300):
        g, h, k = (els[i] for i in rng.integers(0, len(els), 3))
        assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
        assert G.mul(g, G.inv(g)) == G.identity
        assert G.det(G.mul(g, h)) == G.F.mul(G.det(g), G.det(h))


def test_action_is_a_homomorphism():
    G = gl2(3)
    els = list(G.elements())
    for g in els:
        for h in els[::5]:
            gh = G.perm(G.mul(g, h))
            assert np.array_equal(gh, G.perm(g)[G.perm(h)])


def test_point_order():
    G = gl2(9)
    assert G.points[0] == (1, 0) and G.points[-1] == (0, 1)
    assert G.base_point == 0 and G.infinity == 9


@pytest.mark.parametrize("Q", [3, 5])
def test_coset_split(Q):
    G = gl2(Q)
    reps = {G.coset_of(G.coset_rep(i)) for i in range(Q + 1)}
    assert reps == set(range(Q + 1))
    for g in G.elements():
        b, j = G.split_coset(g)
        assert b[2] == 0 and G.mul(b, G.coset_rep(j)) == g


@pytest.mark.parametrize("Q", [3, 5, 9])
def test_bruhat(Q):
    G = gl2(Q)
    for g in G.elements():
        cell = bruhat_decompose(G, g)
        if isinstance(cell, Borel):
            assert g[2] == 0
            continue
        assert cell.t[1] == cell.t[2] == 0
        assert cell.u1[0] == cell.u1[3] == 1 and cell.u1[2] == 0
        assert G.mul(G.mul(cell.t, cell.u1), G.mul(cell.w, cell.u2)) == g


def test_bruhat_examples():
    G = gl2(3)
    assert bruhat_decompose(G, G.w) == Cell((1, 0, 0, 1), (1, 0, 0, 1), G.w, (1, 0, 0, 1))
    assert isinstance(bruhat_decompose(G, (1, 1, 0, 2)), Borel)


@pytest.mark.parametrize("Q", [3, 5, 9, 27])
def test_torus_simply_transitive(Q):
    ok, table = torus_acts_simply_transitively(Q)
    assert ok and sorted(table) == list(range(Q + 1))


def test_torus_is_a_cyclic_subgroup():
    G = gl2(9)
    T = NonsplitTorus(G)
    els = T.elements()
    assert len(set(els)) == T.order == 80
    S = set(els)
    for g in els[::7]:
        for h in els[::3]:
            assert G.mul(g, h) in S
    assert len(_closure(G, [T.generator()])) == 80
    assert not G.F.is_square(T.alpha_sq)
    for i, g in enumerate(T.coset_reps()):
        assert G.act(g, G.base_point) == i


def _norm_square_class_brute(Q, q, z):
    E = extension(Q)
    x = (1, 0)
    for _ in range((Q * Q - 1) // (q - 1)):
        x = E.mul(x, z)
    assert x[1] == 0
    F = field(Q)
    # Euler's criterion inside the subfield F_q
    return 1 if F.power(x[0], (q - 1) // 2) == 1 else -1


@pytest.mark.parametrize("Q,q", [(3, 3), (5, 5), (9, 3), (27, 3)])
def test_square_classes(Q, q):
    T = NonsplitTorus(gl2(Q))
    got = square_classes(Q, q)
    want = [_norm_square_class_brute(Q, q, (g[0], g[2])) for g in T.coset_reps()]
    assert got == want
    assert got[0] == 1


def test_square_norm_counts():
    got = {Q: count_square_norm_cosets(Q, q) for Q, q in ((3, 3), (5, 5), (9, 3), (27, 3))}
    assert got == {3: 2, 5: 3, 9: 5, 27: 14}


def test_square_class_constant_mod_center():
    G = gl2(9)
    T = NonsplitTorus(G)
    for g in T.elements()[::5]:
        for u in range(1, 9):
            assert norm_to_k_square_class(T, G.mul(G.scalar(u), g), 3) == norm_to_k_square_class(T, g, 3)


@pytest.mark.parametrize("Q", [3, 9])
def test_mirabolic_like(Q):
    G = gl2(Q)
    K = MirabolicLike(G)
    els = K.elements()
    assert len(set(els)) == K.order == Q * (Q - 1)
    assert all(G.act(g, G.infinity) == G.infinity for g in els)
    assert _closure(G, K.generators()) == set(els)


def test_subgroup_helpers_and_generators():
    G = gl2(9)
    assert len(upper_unipotent(G)) == len(lower_unipotent(G)) == 9
    assert len(diagonal_torus(G)) == 64
    assert len(_closure(gl2(3), group_generators(gl2(3)))) == gl2(3).order


@pytest.mark.parametrize("Q", [3, 5])
def test_conjugation_into_borel(Q):
    """For non-central g fixing (0:1), x^-1 g x is upper triangular exactly
    when x moves (1:0) to (0:1); for central g it always is."""
    G = gl2(Q)
    for g in MirabolicLike(G).elements():
        central = g[2] == 0
        for x in G.elements():
            upper = G.is_borel(G.mul(G.inv(x), G.mul(g, x)))
            assert upper == (central or G.act(x, G.base_point) == G.infinity)
