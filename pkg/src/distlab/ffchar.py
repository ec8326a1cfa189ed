"""Finite fields, multiplicative characters and admissible-pair data.

Field elements are integers: the base-p digits of an element are the
coefficients of its residue polynomial, lowest degree first.  Characters
are stored by exponent relative to a fixed generator and evaluated as
exact rational angles (fractions of a full turn).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

TABLE_CAP = 1 << 20


class FieldError(ValueError):
    pass


class FieldTooLarge(FieldError):
    pass


class NotASubfield(FieldError):
    pass


class NoDescent(ValueError):
    pass


class NotNonCuspidal(ValueError):
    pass


class NotRegular(ValueError):
    pass


def prime_power(n: int) -> tuple[int, int]:
    """Return (p, m) with n = p**m, or raise FieldError."""
    if n < 2:
        raise FieldError(f"{n} is not a prime power")
    p = next(k for k in range(2, n + 1) if n % k == 0)
    m, r = 0, n
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{n} is not a prime power")
    return p, m


def turn(angle: Fraction) -> complex:
    """e^{2 pi i angle}, snapped to exact values at quarter turns."""
    a = angle % 1
    snap = {Fraction(0): 1.0 + 0j, Fraction(1, 2): -1.0 + 0j,
            Fraction(1, 4): 1j, Fraction(3, 4): -1j}
    if a in snap:
        return snap[a]
    return cmath.exp(2j * cmath.pi * float(a))


@dataclass(frozen=True)
class FieldParams:
    p: int
    q: int
    delta: int

    def __post_init__(self) -> None:
        if self.p % 2 == 0:
            raise FieldError("residual characteristic must be odd")
        p, _ = prime_power(self.q)
        if p != self.p:
            raise FieldError(f"q={self.q} is not a power of p={self.p}")
        if self.delta < 1:
            raise FieldError("delta must be >= 1")

    @classmethod
    def from_q(cls, q: int, delta: int) -> "FieldParams":
        return cls(prime_power(q)[0], q, delta)

    @property
    def Q(self) -> int:
        return self.q ** self.delta

    @property
    def d(self) -> int:
        return 2 * self.delta


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    m = len(mod) - 1
    out = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c:
            for j in range(m + 1):
                out[k - m + j] = (out[k - m + j] - c * mod[j]) % p
    return out[:m]


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(x % p)
        x //= p
    return out


def _encode(ds: list[int], p: int) -> int:
    x = 0
    for c in reversed(ds):
        x = x * p + c
    return x


def _is_irreducible(poly: list[int], p: int) -> bool:
    # trial division by monic polynomials of degree <= m/2
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for code in range(p ** deg):
            div = _digits(code, p, deg) + [1]
            rem = list(poly)
            for k in range(m, deg - 1, -1):
                c = rem[k]
                if c:
                    for j in range(deg + 1):
                        rem[k - deg + j] = (rem[k - deg + j] - c * div[j]) % p
            if not any(rem[:deg]):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m (low coeffs first)."""
    if m == 1:
        return [0, 1]
    for code in range(p ** m):
        poly = _digits(code, p, m) + [1]
        if poly[0] and _is_irreducible(poly, p):
            return poly
    raise FieldError("no irreducible polynomial found")


class FiniteField:
    """F_{p^m} with log/exp tables and the smallest primitive element."""

    def __init__(self, order: int):
        if order > TABLE_CAP:
            raise FieldTooLarge(f"field order {order} exceeds table cap {TABLE_CAP}")
        self.p, self.m = prime_power(order)
        self.order = order
        self.modulus = smallest_irreducible(self.p, self.m)
        n = order - 1
        self.digits = np.array([_digits(x, self.p, self.m) for x in range(order)], dtype=np.int64)
        self._weights = self.p ** np.arange(self.m, dtype=np.int64)
        for cand in range(1, order):
            exp = self._powers(cand)
            if exp is not None:
                break
        self.gen = cand
        self.exp = np.array(exp, dtype=np.int64)
        self.log = np.full(order, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(n)
        a = self.digits
        self.neg = ((-a) % self.p) @ self._weights
        la = self.log
        self.inv = np.zeros(order, dtype=np.int64)
        self.inv[1:] = self.exp[(-la[1:]) % n]
        self.add_table = self.mul_table = None
        if order <= 2048:
            # dense tables for the small fields that carry group computations
            self.add_table = ((a[:, None, :] + a[None, :, :]) % self.p) @ self._weights
            mt = np.zeros((order, order), dtype=np.int64)
            mt[1:, 1:] = self.exp[(la[1:, None] + la[None, 1:]) % n]
            self.mul_table = mt

    def _powers(self, g: int) -> list[int] | None:
        n = self.order - 1
        gd = _digits(g, self.p, self.m)
        x = [1] + [0] * (self.m - 1)
        seen = []
        for i in range(n):
            v = _encode(x, self.p)
            if i > 0 and v == 1:
                return None
            seen.append(v)
            x = _poly_mulmod(x, gd, self.modulus, self.p)
        return seen if _encode(x, self.p) == 1 else None

    def __repr__(self) -> str:
        return f"FiniteField({self.order}, modulus={self.modulus}, gen={self.gen})"

    # scalar arithmetic
    def add(self, x: int, y: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[x, y])
        return int(((self.digits[x] + self.digits[y]) % self.p) @ self._weights)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, int(self.neg[y]))

    def mul(self, x: int, y: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[x, y])
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.log[x] + self.log[y]) % (self.order - 1)])

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise ZeroDivisionError("division by zero in finite field")
        return self.mul(x, int(self.inv[y]))

    def power(self, x: int, k: int) -> int:
        if x == 0:
            return 0 if k > 0 else 1
        return int(self.exp[(self.log[x] * k) % (self.order - 1)])

    def frob(self, x: int, k: int = 1) -> int:
        """x -> x^(p^k)."""
        return self.power(x, self.p ** (k % self.m)) if self.m else x

    def trace_to_prime(self, x: int) -> int:
        t = 0
        for k in range(self.m):
            t = self.add(t, self.power(x, self.p ** k) if x else 0)
        return t

    def is_square(self, x: int) -> bool:
        return x != 0 and self.log[x] % 2 == 0

    def elements(self) -> range:
        return range(self.order)

    def additive_basis(self) -> list[int]:
        return [self.p ** i for i in range(self.m)]

    def subfield_logs(self, s: int) -> np.ndarray:
        """Logs of the units of the subfield of order s."""
        n = self.order - 1
        if (n % (s - 1)) or prime_power(s)[0] != self.p:
            raise NotASubfield(f"no subfield of order {s} in F_{self.order}")
        step = n // (s - 1)
        return np.arange(0, n, step)


@lru_cache(maxsize=None)
def field(order: int) -> FiniteField:
    return FiniteField(order)


class QuadraticExtension:
    """F_{Q^2} as pairs x + alpha*y with alpha^2 = alpha_sq, a non-square of F_Q.

    gen is the smallest generator G with G^(Q+1) = alpha_sq's field generator,
    so that logarithms are compatible with the norm to F_Q.
    """

    def __init__(self, base: FiniteField, alpha_sq: int | None = None):
        self.base = base
        Q = base.order
        self.Q = Q
        self.order = Q * Q
        if self.order > TABLE_CAP:
            raise FieldTooLarge(f"extension order {self.order} exceeds cap")
        self.alpha_sq = base.gen if alpha_sq is None else alpha_sq
        if base.is_square(self.alpha_sq):
            raise FieldError("alpha^2 must be a non-square")
        n = self.order - 1
        target = base.gen
        chosen = None
        for code in range(Q, self.order):
            z = (code % Q, code // Q)
            if self.norm(z) != target:
                continue
            pw = self._power_list(z)
            if pw is not None:
                chosen = z
                break
        if chosen is None:
            raise FieldError("no norm-compatible generator")
        self.gen = chosen
        self.exp = pw
        self.log = {z: i for i, z in enumerate(pw)}
        assert len(self.log) == n

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        F = self.base
        x = F.add(F.mul(a[0], b[0]), F.mul(self.alpha_sq, F.mul(a[1], b[1])))
        y = F.add(F.mul(a[0], b[1]), F.mul(a[1], b[0]))
        return (x, y)

    def norm(self, a: tuple[int, int]) -> int:
        F = self.base
        return F.sub(F.mul(a[0], a[0]), F.mul(self.alpha_sq, F.mul(a[1], a[1])))

    def power(self, a: tuple[int, int], k: int) -> tuple[int, int]:
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def _power_list(self, z: tuple[int, int]) -> list[tuple[int, int]] | None:
        out = []
        x = (1, 0)
        for i in range(self.order - 1):
            if i > 0 and x == (1, 0):
                return None
            out.append(x)
            x = self.mul(x, z)
        return out if x == (1, 0) else None

    def units(self) -> list[tuple[int, int]]:
        return list(self.exp)


@lru_cache(maxsize=None)
def extension(Q: int) -> QuadraticExtension:
    return QuadraticExtension(field(Q))


@dataclass(frozen=True)
class MulCharacter:
    """Character of a cyclic group of order N: generator -> e^{2 pi i exponent/N}."""

    N: int
    exponent: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("group order must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.N)

    @property
    def field_order(self) -> int:
        return self.N + 1

    def angle(self, log: int) -> Fraction:
        return Fraction(self.exponent * log % self.N, self.N)

    def value(self, log: int) -> complex:
        return turn(self.angle(log))

    def values(self, logs: np.ndarray) -> np.ndarray:
        k = (self.exponent * np.asarray(logs, dtype=np.int64)) % self.N
        return np.exp(2j * np.pi * k / self.N)

    def is_trivial(self) -> bool:
        return self.exponent == 0

    def order(self) -> int:
        return self.N // gcd(self.N, self.exponent)

    def __mul__(self, other: "MulCharacter") -> "MulCharacter":
        if other.N != self.N:
            raise ValueError("characters live on different groups")
        return MulCharacter(self.N, self.exponent + other.exponent)

    def inverse(self) -> "MulCharacter":
        return MulCharacter(self.N, -self.exponent)

    def frobenius(self, q: int, nu: int = 1) -> "MulCharacter":
        """chi o Phi^nu with Phi = (x -> x^q)."""
        return MulCharacter(self.N, self.exponent * pow(q, nu, self.N))

    def restrict(self, s: int) -> "MulCharacter":
        """Restriction to the units of the subfield of order s."""
        n = self.N
        if n % (s - 1):
            raise NotASubfield(f"no subgroup of order {s - 1} in a cyclic group of order {n}")
        return MulCharacter(s - 1, self.exponent * (n // (s - 1)))

    def inflate(self, big_order: int) -> "MulCharacter":
        """Composition with the norm from the field of order big_order."""
        n = big_order - 1
        if n % self.N:
            raise NotASubfield("norm target is not a subfield")
        return MulCharacter(n, self.exponent * (n // self.N))


@dataclass(frozen=True)
class TameCharacter:
    residue: MulCharacter
    unif: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "unif", Fraction(self.unif) % 1)

    def __mul__(self, other: "TameCharacter") -> "TameCharacter":
        return TameCharacter(self.residue * other.residue, self.unif + other.unif)

    def at_minus_one(self) -> Fraction:
        return self.residue.angle(self.residue.N // 2)


def _check_subfield(P: int, s: int) -> None:
    p1, _ = prime_power(P)
    try:
        p2, _ = prime_power(s)
    except FieldError as exc:
        raise NotASubfield(str(exc)) from None
    if p1 != p2 or (P - 1) % (s - 1):
        raise NotASubfield(f"F_{s} is not a subfield of F_{P}")


def frobenius_orbit_length(chi: MulCharacter, q: int) -> int:
    n = chi.N
    a = chi.exponent
    f, x = 1, (a * q) % n
    while x != a:
        x = (x * q) % n
        f += 1
    return f


def norm_descend(chibar: MulCharacter) -> MulCharacter:
    """The unique chi0 on F_Q^x with chi0 o N = chibar, N = norm from F_{Q^2}."""
    n = chibar.N
    Q = int(round((n + 1) ** 0.5))
    if Q * Q != n + 1:
        raise ValueError("character does not live on a quadratic extension")
    if chibar.exponent % (Q + 1):
        raise NoDescent(f"exponent {chibar.exponent} is not a multiple of {Q + 1}")
    return MulCharacter(Q - 1, chibar.exponent // (Q + 1))


def is_trivial_on_subfield(chi: MulCharacter, s: int) -> bool:
    _check_subfield(chi.N + 1, s)
    return (chi.exponent * (chi.N // (s - 1))) % chi.N == 0


def is_trivial_on_squares(chi: MulCharacter, s: int) -> bool:
    _check_subfield(chi.N + 1, s)
    return (2 * chi.exponent * (chi.N // (s - 1))) % chi.N == 0


@dataclass(frozen=True)
class PairData:
    params: FieldParams
    chi_f: TameCharacter
    f: int
    e: int
    e_prime: int
    chibar: MulCharacter
    chi0: MulCharacter

    @property
    def Q(self) -> int:
        return self.params.Q

    @property
    def q(self) -> int:
        return self.params.q

    def chi0_nu(self, nu: int) -> MulCharacter:
        return self.chi0.frobenius(self.q, nu)

    def chi_unif(self) -> Fraction:
        """chi(varpi_K) = chi_f(N(varpi_K)) = chi_f(varpi_K)^e."""
        return (self.e * self.chi_f.unif) % 1

    def zeta(self) -> Fraction:
        """chi_f((-1)^(e-1) varpi_K) as an angle."""
        return ((self.e - 1) * self.chi_f.at_minus_one() + self.chi_f.unif) % 1

    def central_obstruction(self) -> str | None:
        """Reason chi is nontrivial on F^x, or None."""
        if not is_trivial_on_subfield(self.chibar, self.q):
            return "residue character nontrivial on the image of O_F^x"
        if (2 * self.e * self.chi_f.unif) % 1:
            return "chi(varpi_F) != 1"
        return None

    def chi0_trivial_on_k(self) -> bool:
        return is_trivial_on_subfield(self.chi0, self.q)


def build_pair_data(params: FieldParams, chi_f: TameCharacter) -> PairData:
    res = chi_f.residue
    p_, m_ = prime_power(res.N + 1)
    qp, qm = prime_power(params.q)
    if p_ != qp or m_ % qm:
        raise ValueError("chi_f does not live on an extension of k")
    f = m_ // qm
    d = params.d
    if d % f or (d // f) % 2:
        raise NotNonCuspidal(f"e = d/f = {d}/{f} is not an even integer")
    if frobenius_orbit_length(res, params.q) != f:
        raise NotRegular(f"residue orbit length differs from f={f}")
    e = d // f
    chibar = res.inflate(params.q ** d)
    chi0 = norm_descend(chibar)
    return PairData(params, chi_f, f, e, gcd(e, 2), chibar, chi0)


def pair_from_exponent(q: int, delta: int, f: int, a: int, unif: Fraction = Fraction(0)) -> PairData:
    params = FieldParams.from_q(q, delta)
    chi_f = TameCharacter(MulCharacter(q ** f - 1, a), unif)
    return build_pair_data(params, chi_f)


def admissible_exponents(q: int, delta: int, f: int) -> list[int]:
    """Smallest exponent of each Galois orbit of regular residue characters of F_{q^f}."""
    d = 2 * delta
    if d % f or (d // f) % 2:
        return []
    n = q ** f - 1
    out = []
    seen: set[int] = set()
    for a in range(n):
        if a in seen:
            continue
        orb = {a * pow(q, k, n) % n for k in range(f)}
        seen |= orb
        if len(orb) == f:
            out.append(a)
    return out
