"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as sparse rational coefficient vectors over the power
basis 1, zeta, ..., zeta^(phi(N)-1), fully reduced modulo the N-th cyclotomic
polynomial.  Because the stored form is canonical, structural equality of the
coefficient data coincides with equality in the field.

Conventions:

* The distinguished complex embedding sends zeta_N to exp(2*pi*i/N).  All
  root disambiguation ("which conjugate is meant") goes through it.
* Conjugation is the Galois automorphism zeta -> zeta^(-1); it agrees with
  complex conjugation in every embedding.
* Elements of different conductors are compared and combined by lifting both
  to the least common multiple conductor.

Power-of-two conductors get a fast path (x^(N/2) == -1), which keeps
arithmetic on monomials like zeta_{2^20} cheap; general conductors use a
precomputed reduction table for x^e mod Phi_N and are limited to moderate N.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Mapping, Union

import mpmath

RationalLike = Union[int, Fraction, str]

# General-conductor machinery materialises dense tables of size ~N; beyond
# this bound only power-of-two conductors are supported.
MAX_DENSE_CONDUCTOR = 10_000


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not a rational value: {value!r}")


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs a positive integer")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (dense, ascending); den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("polynomial division was not exact")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    if n < 1:
        raise ValueError("conductor must be >= 1")
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod of Phi_d over proper divisors d of n.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n)[:-1]:
        num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


class _ConductorData:
    """Cached reduction data for one conductor."""

    def __init__(self, n: int):
        self.n = n
        self.degree = euler_phi(n)
        self.power_of_two = n & (n - 1) == 0
        self.reduction: dict[int, dict[int, int]] = {}
        if not self.power_of_two:
            if n > MAX_DENSE_CONDUCTOR:
                raise ValueError(
                    f"conductor {n} too large; only powers of two are supported "
                    f"beyond {MAX_DENSE_CONDUCTOR}"
                )
            phi = cyclotomic_polynomial(n)
            deg = self.degree
            # x^deg == -(c_0 + c_1 x + ... + c_{deg-1} x^{deg-1}); shift up to
            # get every exponent in [deg, n).
            row = {e: -c for e, c in enumerate(phi[:deg]) if c}
            self.reduction[deg] = row
            for e in range(deg + 1, n):
                nxt: dict[int, int] = {}
                for exp, c in self.reduction[e - 1].items():
                    if exp + 1 == deg:
                        for exp2, c2 in self.reduction[deg].items():
                            nxt[exp2] = nxt.get(exp2, 0) + c * c2
                    else:
                        nxt[exp + 1] = nxt.get(exp + 1, 0) + c
                self.reduction[e] = {k: v for k, v in nxt.items() if v}

    def reduce(self, raw: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Canonicalise exponent->coefficient data (exponents may be >= n)."""
        out: dict[int, Fraction] = {}
        deg = self.degree
        if self.power_of_two:
            half = self.n >> 1 if self.n > 1 else 1
            for e, c in raw.items():
                if not c:
                    continue
                e %= self.n
                if self.n > 1 and e >= half:
                    e -= half
                    c = -c
                out[e] = out.get(e, Fraction(0)) + c
            return {e: c for e, c in out.items() if c}
        for e, c in raw.items():
            if not c:
                continue
            e %= self.n
            if e < deg:
                out[e] = out.get(e, Fraction(0)) + c
            else:
                for e2, m in self.reduction[e].items():
                    out[e2] = out.get(e2, Fraction(0)) + c * m
        return {e: c for e, c in out.items() if c}


@functools.lru_cache(maxsize=None)
def _conductor_data(n: int) -> _ConductorData:
    return _ConductorData(n)


class CycElement:
    """An element of Q(zeta_N), canonically reduced.  Immutable."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Mapping[int, RationalLike], *, _reduced: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        self.conductor = conductor
        if _reduced:
            self.coeffs: dict[int, Fraction] = dict(coeffs)  # type: ignore[arg-type]
        else:
            data = _conductor_data(conductor)
            self.coeffs = data.reduce({int(e): _as_fraction(c) for e, c in coeffs.items()})

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(conductor: int = 1) -> "CycElement":
        return CycElement(conductor, {}, _reduced=True)

    @staticmethod
    def one(conductor: int = 1) -> "CycElement":
        return CycElement(conductor, {0: Fraction(1)})

    @staticmethod
    def rational(value: RationalLike) -> "CycElement":
        return CycElement(1, {0: _as_fraction(value)})

    @staticmethod
    def zeta(n: int, power: int = 1) -> "CycElement":
        return CycElement(n, {power % n: Fraction(1)})

    # -- structure ---------------------------------------------------------

    def lift(self, conductor: int) -> "CycElement":
        """Re-express in Q(zeta_M) for a multiple M of the current conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        step = conductor // self.conductor
        return CycElement(conductor, {e * step: c for e, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> tuple["CycElement", "CycElement"]:
        if isinstance(other, (int, Fraction, str)):
            other = CycElement.rational(other)
        if not isinstance(other, CycElement):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.conductor == other.conductor:
            return self, other
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other) -> "CycElement":
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return CycElement(a.conductor, out, _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "CycElement":
        return CycElement(self.conductor, {e: -c for e, c in self.coeffs.items()}, _reduced=True)

    def __sub__(self, other) -> "CycElement":
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other) -> "CycElement":
        return (-self) + other

    def __mul__(self, other) -> "CycElement":
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        raw: dict[int, Fraction] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                raw[e] = raw.get(e, Fraction(0)) + c1 * c2
        return CycElement(a.conductor, _conductor_data(a.conductor).reduce(raw), _reduced=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = CycElement.one(self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycElement(self.conductor, {0: 1 / self.as_fraction()})
        if self.is_monomial():
            ((e, c),) = self.coeffs.items()
            # zeta^e has inverse zeta^(N-e); cheap even for huge conductors.
            return CycElement(self.conductor, {(self.conductor - e) % self.conductor: 1 / c})
        return self._inverse_xgcd()

    def _inverse_xgcd(self) -> "CycElement":
        n = self.conductor
        data = _conductor_data(n)
        deg = data.degree
        if data.power_of_two and n > MAX_DENSE_CONDUCTOR:
            raise ValueError(f"general inverse unsupported at conductor {n}; element too dense")
        if data.power_of_two:
            modulus = [Fraction(0)] * deg + [Fraction(1)]
            modulus[0] = Fraction(1)  # x^(n/2) + 1
        else:
            modulus = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = [Fraction(0)] * deg
        for e, c in self.coeffs.items():
            a[e] = c
        inv = _poly_mod_inverse(a, modulus)
        return CycElement(n, dict(enumerate(inv)))

    def __truediv__(self, other) -> "CycElement":
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other) -> "CycElement":
        return CycElement.rational(other) / self

    # -- Galois action -----------------------------------------------------

    def galois(self, exponent: int) -> "CycElement":
        """Apply zeta -> zeta^exponent; exponent must be coprime to N."""
        n = self.conductor
        k = exponent % n
        if math.gcd(k, n) != 1:
            raise ValueError(f"exponent {exponent} is not coprime to conductor {n}")
        return CycElement(n, {(e * k) % n: c for e, c in self.coeffs.items()})

    def conj(self) -> "CycElement":
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    # -- numerics ----------------------------------------------------------

    def to_complex(self, digits: int = 30) -> complex:
        """Evaluate under the distinguished embedding zeta_N -> e^(2*pi*i/N).

        Computed at more than twice the requested decimal precision, so the
        rounded result is accurate well within 10^-digits.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        with mpmath.workdps(2 * digits + 10):
            total = mpmath.mpc(0)
            for e, c in self.coeffs.items():
                coeff = mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                total += coeff * mpmath.e ** (2j * mpmath.pi * e / self.conductor)
            return complex(total)

    # -- comparisons and display -------------------------------------------

    def __eq__(self, other) -> bool:
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.conductor}" + (f"^{e}" if e > 1 else "")
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycElement({self.conductor}, {{{', '.join(f'{e}: {c}' for e, c in sorted(self.coeffs.items()))}}})"


def _poly_mod_inverse(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo a monic polynomial over Q, by extended Euclid."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_(num, den):
        num = list(num)
        q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            q[i] = c
            if c:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        return q, trim(num)

    def mul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
        for i, ci in enumerate(p):
            if ci:
                for j, cj in enumerate(q):
                    out[i + j] += ci * cj
        return trim(out)

    def sub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] -= c
        return trim(out)

    r0, r1 = list(modulus), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    lead = r0[0]
    return [c / lead for c in s0]


# -- named elements ---------------------------------------------------------

def zeta(n: int, power: int = 1) -> CycElement:
    return CycElement.zeta(n, power)


def rational(value: RationalLike) -> CycElement:
    return CycElement.rational(value)


def imag_unit() -> CycElement:
    """i = zeta_4."""
    return zeta(4)


def sqrt2() -> CycElement:
    """sqrt(2) = zeta_8 + zeta_8^7 (positive in the distinguished embedding)."""
    return zeta(8) + zeta(8, 7)


def sqrt5() -> CycElement:
    """sqrt(5) = 1 + 2*(zeta_5 + zeta_5^4) (positive)."""
    return rational(1) + rational(2) * (zeta(5) + zeta(5, 4))


def sqrt3() -> CycElement:
    """sqrt(3) = zeta_12 + zeta_12^11 (positive)."""
    return zeta(12) + zeta(12, 11)


def cos_2pi_over(n: int) -> CycElement:
    """cos(2*pi/n) = (zeta_n + zeta_n^(n-1)) / 2."""
    return (zeta(n) + zeta(n, n - 1)) / 2


def omega3() -> CycElement:
    """Primitive third root of unity e^(2*pi*i/3)."""
    return zeta(3)


def omega8() -> CycElement:
    """Primitive eighth root of unity e^(2*pi*i/8)."""
    return zeta(8)


class GaloisAutomorphism:
    """zeta_N -> zeta_N^k for gcd(k, N) = 1.

    Acts on elements whose conductor divides N.  Extension to larger
    conductors is deliberately not provided: it would not be unique.
    """

    __slots__ = ("conductor", "exponent")

    def __init__(self, conductor: int, exponent: int):
        exponent %= conductor
        if math.gcd(exponent, conductor) != 1:
            raise ValueError(f"exponent {exponent} not coprime to {conductor}")
        self.conductor = conductor
        self.exponent = exponent

    def __call__(self, a: CycElement) -> CycElement:
        if self.conductor % a.conductor:
            raise ValueError(
                f"automorphism of Q(zeta_{self.conductor}) cannot act on a "
                f"conductor-{a.conductor} element"
            )
        return a.lift(self.conductor).galois(self.exponent)

    def compose(self, other: "GaloisAutomorphism") -> "GaloisAutomorphism":
        if self.conductor != other.conductor:
            raise ValueError("can only compose automorphisms of the same field")
        return GaloisAutomorphism(self.conductor, (self.exponent * other.exponent) % self.conductor)

    def is_conjugation(self) -> bool:
        return self.exponent == self.conductor - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaloisAutomorphism):
            return NotImplemented
        return (self.conductor, self.exponent) == (other.conductor, other.exponent)

    def __hash__(self) -> int:
        return hash((self.conductor, self.exponent))

    def __repr__(self) -> str:
        return f"GaloisAutomorphism(zeta_{self.conductor} -> zeta^{self.exponent})"


def conjugation(conductor: int) -> GaloisAutomorphism:
    return GaloisAutomorphism(conductor, conductor - 1)


def galois_group_exponents(n: int) -> list[int]:
    """All k with gcd(k, n) = 1, i.e. Gal(Q(zeta_n)/Q)."""
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
