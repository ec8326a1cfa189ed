from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from distlab.ffchar import MulCharacter, pair_from_exponent
from distlab.gl2fq import (
    MirabolicLike, NonsplitTorus, gl2, group_generators, lower_unipotent, upper_unipotent,
)
from distlab.repmodels import (
    InducedModel, SteinbergModel, SubgroupAction, additive_character, build_J,
    check_J_intertwines, decompose_Vs, inner_product_trivial_on_Ks1, invariant_dim,
    null_space, numeric_rank, s1_s2_vanishing, steinberg_twist, to_fraction,
    triviality_forces_halfshift, whittaker_vector,
)


def _sample(G, n, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        g = tuple(int(x) for x in rng.integers(0, G.Q, 4))
        if G.det(g):
            out.append(g)
    return out


def test_linear_algebra_helpers():
    m = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert numeric_rank(m) == 1
    ns = null_space(m)
    assert ns.shape == (2, 1) and np.allclose(m @ ns, 0)
    assert to_fraction(0.25 + 0j) == Fraction(1, 4)


@pytest.mark.parametrize("Q", [3, 9])
def test_models_are_representations(Q):
    G = gl2(Q)
    models = [SteinbergModel(G, MulCharacter(Q - 1, 1)),
              InducedModel(G, MulCharacter(Q - 1, 1), MulCharacter(Q - 1, 2))]
    gs = _sample(G, 12, seed=Q)
    for M in models:
        for g in gs:
            assert np.isclose(np.trace(M.matrix(g)), M.character(g))
            for h in gs[:4]:
                assert np.allclose(M.matrix(G.mul(g, h)), M.matrix(g) @ M.matrix(h))


def test_steinberg_coordinates():
    G = gl2(3)
    St = SteinbergModel(G, MulCharacter(2, 0))
    h = np.array([-3.0, 1.0, 1.0, 1.0])
    assert np.allclose(St.function(St.coords(h)), h)
    v = St.jacquet_vector(0)
    assert np.allclose(St.function(v), [1, -1 / 3, -1 / 3, -1 / 3])
    # the vector at (1:0) is fixed by the upper unipotent group, the one at (0:1) by the lower
    for u in upper_unipotent(G):
        assert np.allclose(St.matrix(u) @ v, v)
    vq = St.jacquet_vector(3)
    for u in lower_unipotent(G):
        assert np.allclose(St.matrix(u) @ vq, vq)


def test_induced_jacquet_lines():
    G = gl2(9)
    U = InducedModel(G, MulCharacter(8, 1), MulCharacter(8, 3))
    for e in U.jacquet_upper():
        for u in upper_unipotent(G):
            assert np.allclose(U.matrix(u) @ e, e)
    for e in U.jacquet_lower():
        for u in lower_unipotent(G):
            assert np.allclose(U.matrix(u) @ e, e)


def test_decomposition_dimensions():
    comps = decompose_Vs(pair_from_exponent(3, 2, 2, 1))
    assert [(c.label, c.kind) for c in comps] == [("W0", "St"), ("W1", "St"), ("U0,1", "Ind")]
    assert sum(c.dim for c in comps) == 28
    comps = decompose_Vs(pair_from_exponent(3, 3, 3, 1))
    assert len(comps) == 6 and sum(c.dim for c in comps) == 165
    assert len(decompose_Vs(pair_from_exponent(3, 1, 1, 1))) == 1


def test_steinberg_twist_exponent():
    # residue character of order 2 on k^x gives the quadratic twist of det
    assert steinberg_twist(pair_from_exponent(3, 2, 2, 1), 0) == MulCharacter(8, 4)
    assert steinberg_twist(pair_from_exponent(3, 2, 2, 2), 0) == MulCharacter(8, 0)


@pytest.mark.parametrize("Q", [3, 5, 9])
def test_torus_invariants(Q):
    """T acts simply transitively on P^1 mod its center, so on the twisted
    Steinberg model it has an invariant line exactly for the quadratic twist;
    on Ind(chi1, chi2) there is one iff chi1 chi2 = 1."""
    G = gl2(Q)
    T = NonsplitTorus(G).elements()
    A = SubgroupAction(G, T)
    for c in range(Q - 1):
        tw = MulCharacter(Q - 1, c)
        want = int(tw.order() == 2)
        assert A.steinberg_dim(tw) == want
        if Q < 9:
            assert invariant_dim(SteinbergModel(G, tw), T) == want
    for a in range(Q - 1):
        for b in range(0, Q - 1, 3 if Q == 9 else 1):
            want = int((a + b) % (Q - 1) == 0)
            assert A.induced_dim(MulCharacter(Q - 1, a), MulCharacter(Q - 1, b)) == want


def test_inner_product_on_mirabolic_like():
    G = gl2(9)
    assert inner_product_trivial_on_Ks1(InducedModel(G, MulCharacter(8, 1), MulCharacter(8, 7))) == 2
    assert inner_product_trivial_on_Ks1(InducedModel(G, MulCharacter(8, 1), MulCharacter(8, 1))) == 0
    K = MirabolicLike(G).elements()
    assert invariant_dim(InducedModel(G, MulCharacter(8, 3), MulCharacter(8, 5)), K) == 2


def test_half_shift():
    assert triviality_forces_halfshift(pair_from_exponent(3, 2, 2, 2).chi0, 2, 3).trivial_pairs == ((0, 1),)
    assert triviality_forces_halfshift(pair_from_exponent(3, 2, 2, 1).chi0, 2, 3).trivial_pairs == ()
    r = triviality_forces_halfshift(pair_from_exponent(3, 3, 3, 1).chi0, 3, 3)
    assert r.consistent and r.trivial_pairs == ()
    # a hand-made violation: chi0 = 1 makes every product trivial
    assert not triviality_forces_halfshift(MulCharacter(8, 0), 3, 3).consistent


def test_whittaker_vector():
    G = gl2(9)
    U = InducedModel(G, MulCharacter(8, 1), MulCharacter(8, 3))
    f0 = whittaker_vector(U)
    assert f0[G.coset_of(G.identity)] == 0
    for x in range(9):
        assert np.allclose(U.matrix(G.upper(x)) @ f0, additive_character(G, x) * f0)


@pytest.mark.parametrize("a", [1, 2, 5])
def test_J(a):
    p = pair_from_exponent(3, 2, 2, a)
    U = decompose_Vs(p)[-1].model
    J = build_J(U, p)
    f0 = whittaker_vector(U)
    assert np.allclose(J.matrix @ f0, f0)
    assert np.allclose(J.matrix @ J.matrix, np.eye(U.dim))
    # the unnormalized kernel has a Gauss-sum eigenvalue
    assert abs(J.raw_eigenvalue) == pytest.approx(3.0)
    for h in group_generators(U.G) + _sample(U.G, 20, seed=a):
        assert check_J_intertwines(U, J, 3, h) < 1e-9


def test_J_requires_even_f():
    p = pair_from_exponent(3, 3, 3, 1)
    U = decompose_Vs(p)[-1].model
    with pytest.raises(ValueError):
        build_J(U, p)


def test_s1_s2():
    p = pair_from_exponent(3, 2, 2, 2)
    U = decompose_Vs(p)[-1].model
    r = s1_s2_vanishing(U, build_J(U, p))
    assert abs(r.S1) < 1e-12 and abs(r.S2) < 1e-12
    assert r.phi_ftilde == pytest.approx(1.0)
    assert r.orthogonality == 0
    assert r.fiber_counts == (9,)
    # with the torus-invariant convention the pieces are -i/9 and -8i/9
    assert r.invariant_S1 == pytest.approx(-1j / 9)
    assert r.invariant_S2 == pytest.approx(-8j / 9)
    assert r.target == pytest.approx(1.0)
