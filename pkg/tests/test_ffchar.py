from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from distlab.ffchar import (
    FieldError, FieldParams, MulCharacter, NoDescent, NotASubfield, NotNonCuspidal,
    NotRegular, TameCharacter, admissible_exponents, build_pair_data, extension, field,
    frobenius_orbit_length, is_trivial_on_squares, is_trivial_on_subfield, norm_descend,
    pair_from_exponent, prime_power,
)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12):
        with pytest.raises(FieldError):
            prime_power(bad)


def test_field_params():
    fp = FieldParams.from_q(3, 2)
    assert (fp.Q, fp.d) == (9, 4)


@pytest.mark.parametrize("order", [3, 4, 9, 25, 27, 81])
def test_field_axioms(order):
    F = field(order)
    n = order - 1
    assert sorted(F.exp.tolist()) == list(range(1, order))
    assert F.power(F.gen, n) == 1
    for x in range(order):
        assert F.power(x, order) == x  # x^Q = x
        assert F.add(x, int(F.neg[x])) == 0
        if x:
            assert F.mul(x, int(F.inv[x])) == 1
    els = range(order) if order <= 9 else range(0, order, max(1, order // 7))
    for x, y, z in product(els, repeat=3):
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))


def test_frobenius_is_additive_and_trace_lands_in_prime_field():
    F = field(27)
    for x in range(27):
        for y in range(27):
            assert F.frob(F.add(x, y)) == F.add(F.frob(x), F.frob(y))
        assert F.trace_to_prime(x) < 3


def test_subfield_logs():
    F = field(81)
    logs = F.subfield_logs(9)
    assert len(logs) == 8
    for k in logs:
        x = int(F.exp[k])
        assert F.power(x, 9) == x
    with pytest.raises(NotASubfield):
        F.subfield_logs(27)


@pytest.mark.parametrize("Q", [3, 5, 9])
def test_extension_norm_compatible(Q):
    E = extension(Q)
    F = field(Q)
    assert len(E.units()) == Q * Q - 1
    for z in E.units():
        # log of the norm is the log of z divided down by Q+1
        assert F.log[E.norm(z)] == E.log[z] % (Q - 1)
    assert E.norm(E.gen) == F.gen


def test_orbit_lengths():
    assert frobenius_orbit_length(MulCharacter(80, 20), 3) == 2
    assert frobenius_orbit_length(MulCharacter(80, 60), 3) == 2
    assert frobenius_orbit_length(MulCharacter(26, 1), 3) == 3
    assert frobenius_orbit_length(MulCharacter(80, 0), 3) == 1
    # brute force over every exponent
    for a in range(80):
        orbit = {a * 3 ** k % 80 for k in range(8)}
        assert frobenius_orbit_length(MulCharacter(80, a), 3) == len(orbit)


def test_norm_descend():
    chi0 = norm_descend(MulCharacter(80, 20))
    assert chi0 == MulCharacter(8, 2)
    with pytest.raises(NoDescent):
        norm_descend(MulCharacter(80, 1))
    E = extension(9)
    F = field(9)
    for z in E.units():
        lhs = chi0.angle(int(F.log[E.norm(z)]))
        assert lhs == MulCharacter(80, 20).angle(E.log[z])


def test_subfield_triviality():
    F = field(27)
    chi = MulCharacter(26, 1)
    sub = [x for x in range(1, 27) if F.power(x, 3) == x]
    brute = all(chi.angle(int(F.log[x])) == 0 for x in sub)
    assert is_trivial_on_subfield(chi, 3) == brute is False
    assert is_trivial_on_subfield(MulCharacter(26, 2), 3)
    with pytest.raises(NotASubfield):
        is_trivial_on_subfield(chi, 9)


def test_squares_of_subfield_in_F25():
    F = field(25)
    sub = [x for x in range(1, 25) if F.power(x, 5) == x]
    squares = {F.mul(x, x) for x in sub}
    for a in range(24):
        chi = MulCharacter(24, a)
        brute = all(chi.angle(int(F.log[y])) == 0 for y in squares)
        assert is_trivial_on_squares(chi, 5) == brute
    assert is_trivial_on_squares(MulCharacter(24, 12), 5)


def test_character_algebra():
    chi = MulCharacter(80, 7)
    assert (chi * chi.inverse()).is_trivial()
    assert chi.order() == 80
    assert chi.restrict(9) == MulCharacter(8, 70 % 8)
    assert MulCharacter(8, 1).inflate(81) == MulCharacter(80, 10)
    assert chi.frobenius(3, 2) == MulCharacter(80, 63)
    t = TameCharacter(MulCharacter(8, 4), Fraction(3, 2))
    assert t.unif == Fraction(1, 2)
    assert t.at_minus_one() == Fraction(0)
    assert TameCharacter(MulCharacter(8, 1)).at_minus_one() == Fraction(1, 2)


def test_build_pair_data_quadratic_case():
    p = pair_from_exponent(3, 2, 2, 1)
    assert (p.f, p.e, p.e_prime) == (2, 2, 2)
    assert p.chibar == MulCharacter(80, 10)
    assert p.chi0 == MulCharacter(8, 1)
    assert p.central_obstruction() is None
    assert p.zeta() == Fraction(1, 2)
    assert pair_from_exponent(3, 2, 2, 2).zeta() == 0
    assert pair_from_exponent(3, 2, 2, 2, Fraction(1, 2)).zeta() == Fraction(1, 2)


def test_build_pair_data_odd_f():
    p = pair_from_exponent(3, 3, 3, 1)
    assert (p.f, p.e, p.e_prime) == (3, 2, 2)
    assert p.Q == 27
    assert not p.chi0_trivial_on_k()


def test_build_pair_data_rejections():
    with pytest.raises(NotNonCuspidal):
        pair_from_exponent(3, 2, 4, 1)
    with pytest.raises(NotRegular):
        pair_from_exponent(3, 2, 2, 4)
    with pytest.raises(ValueError):
        build_pair_data(FieldParams.from_q(3, 2), TameCharacter(MulCharacter(24, 1)))


def test_central_obstruction():
    p = pair_from_exponent(3, 1, 1, 0, Fraction(1, 8))
    assert p.central_obstruction() == "chi(varpi_F) != 1"
    # over F_3 the norm of a unit is a square, so only q > 3 obstructs here
    assert pair_from_exponent(3, 1, 1, 1).central_obstruction() is None
    p = pair_from_exponent(5, 1, 1, 1)
    assert p.central_obstruction().startswith("residue character nontrivial")


def test_admissible_exponents():
    assert admissible_exponents(3, 2, 2) == [1, 2, 5]
    assert admissible_exponents(3, 2, 1) == [0, 1]
    assert admissible_exponents(3, 2, 4) == []
    # orbit count: regular characters of F_9^x / Frobenius
    regular = [a for a in range(8) if frobenius_orbit_length(MulCharacter(8, a), 3) == 2]
    assert len(regular) // 2 == 3
