from __future__ import annotations

from fractions import Fraction

import pytest

from distlab.distinction import CANDIDATE, NOT_DISTINGUISHED, steinberg_pair
from distlab.ffchar import MulCharacter, TameCharacter, field, pair_from_exponent
from distlab.jl import (
    AGREEMENT_PROVEN, CONFLICT, OPEN, EtaData, correction_exponent, delta_element,
    delta_element_exponents, eta_distinction_criterion, glf_distinction_criterion,
    is_steinberg, jl_agreement_report, kable_exclusion_check, kable_scan, transfer,
    transfer_back, unramified_quadratic,
)


def test_correction_exponent():
    assert [correction_exponent(f) for f in (1, 2, 3, 4)] == [1, 0, 1, 0]


def test_transfer_round_trip():
    for a in (1, 2, 5):
        p = pair_from_exponent(3, 2, 2, a, Fraction(1, 4))
        sp = transfer(p)
        assert (sp.n, sp.r) == (4, 2)
        assert transfer_back(sp) == (p.f, p.chi_f)
        assert sp.theta_support.unif == Fraction(3, 4)
    assert unramified_quadratic(8) == TameCharacter(MulCharacter(8, 0), Fraction(1, 2))


def test_delta_elements():
    F = field(9)
    js = delta_element_exponents(3, 2)
    assert delta_element(3, 2) == 2 and js == [2, 6]
    sub = {x for x in range(1, 9) if F.power(x, 3) == x}
    for j in js:
        x = int(F.exp[j])
        assert x not in sub and F.mul(x, x) in sub


def test_eta():
    e = EtaData(3)
    assert e.minus_one == Fraction(1, 2) and e.alpha == Fraction(1, 4)
    assert EtaData(5).minus_one == 0
    lift = e.lift_to(2)
    assert lift.residue == MulCharacter(8, 4) and lift.unif == Fraction(1, 2)
    # the residue of the lift is the Legendre symbol of the norm to F_3
    F = field(9)
    for x in range(1, 9):
        legendre = F.power(x, 4) == 1  # norm to F_3 is x^4
        assert (lift.residue.angle(int(F.log[x])) == 0) == legendre


def test_glf_criterion_examples():
    N = 8
    assert glf_distinction_criterion(TameCharacter(MulCharacter(N, 0), Fraction(1, 2)), 2, 3)
    assert not glf_distinction_criterion(TameCharacter(MulCharacter(N, 0)), 2, 3)
    # nontrivial on k_{f/2}^x
    assert not glf_distinction_criterion(TameCharacter(MulCharacter(N, 1), Fraction(1, 2)), 2, 3)
    # theta(varpi) of order 4
    assert not glf_distinction_criterion(TameCharacter(MulCharacter(N, 0), Fraction(1, 4)), 2, 3)
    assert not glf_distinction_criterion(TameCharacter(MulCharacter(26, 0), Fraction(1, 2)), 3, 3)


def test_glf_criterion_independent_of_delta():
    for f, N in ((2, 8), (4, 80)):
        js = delta_element_exponents(3, f)
        for a in range(N):
            for u in (Fraction(0), Fraction(1, 2)):
                th = TameCharacter(MulCharacter(N, a), u)
                vals = {glf_distinction_criterion(th, f, 3, j) for j in js}
                assert len(vals) == 1


def test_kable():
    assert kable_scan(3, 2) == (80, 0)
    assert kable_scan(3, 4) == (800, 0)
    eta = EtaData(3)
    assert kable_exclusion_check(steinberg_pair(3, 2), eta)
    assert kable_exclusion_check(pair_from_exponent(3, 3, 3, 1), eta)
    assert not eta_distinction_criterion(pair_from_exponent(3, 3, 3, 1), eta)


def test_is_steinberg():
    assert is_steinberg(steinberg_pair(3, 1))
    assert not is_steinberg(pair_from_exponent(3, 1, 1, 1))


def test_report_steinberg():
    r = jl_agreement_report(steinberg_pair(3, 2), R=2)
    assert (r.d_side, r.split_side, r.flag, r.kable) == (NOT_DISTINGUISHED, NOT_DISTINGUISHED, AGREEMENT_PROVEN, True)


def test_report_odd_f_is_open():
    r = jl_agreement_report(pair_from_exponent(3, 3, 3, 1), R=1)
    assert r.flag == OPEN and r.d_side == CANDIDATE and r.split_side == NOT_DISTINGUISHED


def test_report_even_f_agreement():
    r = jl_agreement_report(pair_from_exponent(3, 2, 2, 2, Fraction(1, 2)), R=2)
    assert r.flag == AGREEMENT_PROVEN and r.d_side == r.split_side == NOT_DISTINGUISHED


def test_report_even_f_conflict_is_reported():
    # the split-side test accepts this pair while the D^x side has no form
    r = jl_agreement_report(pair_from_exponent(3, 2, 2, 2), R=2)
    assert r.split_side == "distinguished" and r.d_side == NOT_DISTINGUISHED
    assert r.flag == CONFLICT


def test_report_uses_given_nullity():
    r = jl_agreement_report(pair_from_exponent(3, 2, 2, 1), d_nullity=0)
    assert r.d_nullity == 0 and r.flag == AGREEMENT_PROVEN
