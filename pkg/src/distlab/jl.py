"""Split-side bookkeeping for the Jacquet-Langlands transfer.

Everything here is character arithmetic.  A tame character of K_f^x is a
TameCharacter: a residue character of k_f^x plus the angle of its value on
varpi_K, with varpi_K^2 = varpi_F.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .ffchar import MulCharacter, PairData, TameCharacter

AGREEMENT_PROVEN = "AGREEMENT_PROVEN"
OPEN = "OPEN"
CONFLICT = "CONFLICT"


def unramified_quadratic(Nf: int) -> TameCharacter:
    """zeta: trivial on units, -1 on varpi_K."""
    return TameCharacter(MulCharacter(Nf, 0), Fraction(1, 2))


@dataclass(frozen=True)
class SplitSideParam:
    n: int
    r: int
    f: int
    chi_f: TameCharacter
    theta_support: TameCharacter


def transfer(pair: PairData) -> SplitSideParam:
    n = 2 * pair.params.delta
    z = unramified_quadratic(pair.chi_f.residue.N)
    return SplitSideParam(n, n // pair.f, pair.f, pair.chi_f, z * pair.chi_f)


def transfer_back(sp: SplitSideParam) -> tuple[int, TameCharacter]:
    """The admissible pair is unchanged by the transfer."""
    return sp.f, sp.chi_f


def correction_exponent(f: int, m: int = 2) -> int:
    """m - gcd(f, m): the power of the Weyl element separating type and representation."""
    return m - gcd(f, m)


@dataclass(frozen=True)
class EtaData:
    """Quadratic character of F^x cut out by the ramified extension K.

    On units it is the Legendre symbol of the residue; eta(varpi_F) = eta(-1).
    eta_hat extends it to K^x with eta_hat(varpi_K) = alpha, alpha^2 = eta(-1).
    """
    q: int

    @property
    def minus_one(self) -> Fraction:
        return Fraction((self.q - 1) // 2, 2) % 1

    @property
    def alpha(self) -> Fraction:
        return self.minus_one / 2

    def on_unit(self, log: int) -> Fraction:
        return Fraction(log % 2, 2)

    def lift_to(self, f: int) -> TameCharacter:
        """eta_hat o N_{K_f/K}: the quadratic character of k_f, alpha^f on varpi_K."""
        N = self.q ** f - 1
        return TameCharacter(MulCharacter(N, N // 2), (f * self.alpha) % 1)


def delta_element_exponents(q: int, f: int) -> list[int]:
    """Logs j of every delta in k_f^x outside k_{f/2} with delta^2 in k_{f/2}^x."""
    N = q ** f - 1
    h = q ** (f // 2) + 1
    return [j for j in range(N) if (2 * j) % h == 0 and j % h]


def delta_element(q: int, f: int) -> int:
    return min(delta_element_exponents(q, f))


def _trivial_on_subfield(chi: MulCharacter, s: int) -> bool:
    return (chi.exponent * (chi.N // (s - 1))) % chi.N == 0


def glf_distinction_criterion(theta: TameCharacter, f: int, q: int, delta_log: int | None = None) -> bool:
    if f % 2:
        return False
    res = theta.residue
    if (2 * theta.unif) % 1 or not _trivial_on_subfield(res, q):
        return False
    if not _trivial_on_subfield(res, q ** (f // 2)):
        return False
    j = delta_element(q, f) if delta_log is None else delta_log
    return (theta.unif + res.angle(j)) % 1 == Fraction(1, 2)


def eta_twist(pair: PairData, eta: EtaData) -> TameCharacter:
    return transfer(pair).theta_support * eta.lift_to(pair.f)


def eta_distinction_criterion(pair: PairData, eta: EtaData) -> bool:
    return glf_distinction_criterion(eta_twist(pair, eta), pair.f, pair.q)


def kable_exclusion_check(pair: PairData, eta: EtaData) -> bool:
    both = (glf_distinction_criterion(transfer(pair).theta_support, pair.f, pair.q)
            and eta_distinction_criterion(pair, eta))
    return not both


def kable_scan(q: int, f: int, unif_steps: int = 10) -> tuple[int, int]:
    """(pairs scanned, pairs violating the exclusion) over all residue
    characters of k_f and uniformizer angles j / unif_steps."""
    eta = EtaData(q)
    N = q ** f - 1
    bad = 0
    count = 0
    for a in range(N):
        for j in range(unif_steps):
            theta = TameCharacter(MulCharacter(N, a), Fraction(j, unif_steps))
            z = unramified_quadratic(N)
            lhs = glf_distinction_criterion(z * theta, f, q)
            rhs = glf_distinction_criterion(z * theta * eta.lift_to(f), f, q)
            count += 1
            bad += lhs and rhs
    return count, bad


def is_steinberg(pair: PairData) -> bool:
    return pair.f == 1 and pair.chi_f.residue.is_trivial() and pair.chi_f.unif == 0


@dataclass(frozen=True)
class JLReport:
    d_side: str
    split_side: str
    flag: str
    kable: bool
    d_nullity: int


def jl_agreement_report(pair: PairData, R: int = 2, d_nullity: int | None = None) -> JLReport:
    from .distinction import NOT_DISTINGUISHED, analyze_pair, verdict_for
    if d_nullity is None:
        d_nullity = analyze_pair(pair, R).nullity
    d_side = verdict_for(d_nullity)
    eta = EtaData(pair.q)
    split = "distinguished" if eta_distinction_criterion(pair, eta) else NOT_DISTINGUISHED
    if pair.f % 2 == 0 or is_steinberg(pair) or pair.chi0_trivial_on_k():
        flag = AGREEMENT_PROVEN if d_side == split else CONFLICT
    else:
        flag = OPEN
    return JLReport(d_side, split, flag, kable_exclusion_check(pair, eta), d_nullity)
