"""Kroneckerian number rings carved out of cyclotomic fields.

A ring is modelled as "the subring of a number field K0 generated by the
declared generators, with denominators allowed at a fixed set of primes":

* subfield membership is decided by invariance under the Galois
  automorphisms of the ambient Q(zeta_N) fixing K0;
* denominator membership is decided by the coordinates over a Q-basis of K0
  built from products of the generators (scaled to content-1 integer
  vectors).

The basis is the one generated by the declared generators, not a maximal
order.  For every ring used here the difference is invisible: it could only
show at primes dividing the index of the generated order, and those primes
are always among the allowed denominators (or the ring is a field).

Towers R in R[alpha] carry alpha's minimal polynomial over Frac(R), computed
as the Galois-orbit product prod (x - sigma(alpha)); the polynomial is monic
and irreducible by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cyclotomic import (
    CycElement,
    GaloisAutomorphism,
    euler_phi,
    galois_group_exponents,
    zeta,
)
from .matrix import Polynomial

# Enumerating (Z/L)* to find fixing subgroups is only done for moderate L;
# larger ambients must use the power-of-two cyclotomic fast path.
MAX_ENUMERATED_AMBIENT = 1000


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


class RingMembershipError(ValueError):
    """Raised when an element fails to lie in the expected ring."""


class RingSpec:
    """A Kroneckerian number ring inside an ambient Q(zeta_N).

    ``denominator_primes`` is a frozenset of rational primes (empty set:
    algebraic integers only) or None for "all primes" (the ring is the whole
    subfield K0).
    """

    def __init__(
        self,
        conductor: int,
        generators: Sequence[CycElement],
        denominator_primes: Optional[frozenset[int]] = frozenset(),
        name: str = "",
    ):
        self.conductor = conductor
        self.generators = tuple(g.lift(conductor) for g in generators)
        self.denominator_primes = (
            None if denominator_primes is None else frozenset(denominator_primes)
        )
        self.name = name or self._default_name()

        self._cyclo_subfield: Optional[int] = None  # M when K0 = Q(zeta_M), 2-power path
        if self._try_power_of_two_fast_path():
            self._check_kroneckerian()
            return

        if conductor > MAX_ENUMERATED_AMBIENT:
            raise ValueError(
                f"ambient conductor {conductor} too large for generic ring machinery"
            )
        self._basis = self._closure_basis()
        self._fixing = self._fixing_exponents()
        self._check_kroneckerian()

    # -- constructors --------------------------------------------------------

    @staticmethod
    def rationals(denominator_primes=frozenset(), conductor: int = 1, name: str = "") -> "RingSpec":
        return RingSpec(conductor, [], denominator_primes, name or "Q-span")

    @staticmethod
    def cyclotomic(m: int, denominator_primes=frozenset(), conductor: int = 0, name: str = "") -> "RingSpec":
        """The ring generated by zeta_m (localised at the given primes)."""
        return RingSpec(conductor or m, [zeta(m)], denominator_primes, name)

    def _default_name(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "1"
        if self.denominator_primes is None:
            return f"Q[{gens}]"
        primes = ",".join(str(p) for p in sorted(self.denominator_primes))
        return f"Z[{gens}]" + (f" loc ({primes})" if primes else "")

    # -- fast path for power-of-two cyclotomic subfields ----------------------

    def _try_power_of_two_fast_path(self) -> bool:
        n = self.conductor
        if n & (n - 1):
            return False
        if len(self.generators) != 1:
            return False
        g = self.generators[0]
        if not (g.is_monomial() and next(iter(g.coeffs.values())) == 1):
            return False
        e = next(iter(g.coeffs.keys()))
        if e == 0 or n % e:
            return False
        m = n // e  # generator is zeta_m
        if m & (m - 1):
            return False
        self._cyclo_subfield = m
        self._fixing = tuple(
            j for j in range(1, n + 1, m) if math.gcd(j, n) == 1
        )
        return True

    # -- construction helpers --------------------------------------------------

    def _closure_basis(self) -> tuple[CycElement, ...]:
        """Q-basis of the subfield K0 = Q(generators), content-1 integral vectors."""
        deg = euler_phi(self.conductor)

        vectors: list[list[Fraction]] = []  # row-reduced shadow copies
        basis: list[CycElement] = []

        def vec(a: CycElement) -> list[Fraction]:
            v = [Fraction(0)] * deg
            for e, c in a.coeffs.items():
                v[e] = c
            return v

        def reduce_against(v: list[Fraction]) -> list[Fraction]:
            for row in vectors:
                piv = next(i for i, x in enumerate(row) if x)
                if v[piv]:
                    f = v[piv] / row[piv]
                    for i in range(deg):
                        v[i] -= f * row[i]
            return v

        def try_add(a: CycElement) -> bool:
            v = reduce_against(vec(a))
            if any(v):
                vectors.append(v)
                basis.append(a)
                return True
            return False

        try_add(CycElement.one(self.conductor))
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                for b in list(basis):
                    if try_add(g * b):
                        changed = True
        # Normalise basis elements to content-1 integer coefficient vectors.
        out = []
        for b in basis:
            denom = math.lcm(*(c.denominator for c in b.coeffs.values())) if b.coeffs else 1
            scaled = b * denom
            content = math.gcd(*(int(c) for c in scaled.coeffs.values())) if scaled.coeffs else 1
            out.append(scaled / content)
        return tuple(out)

    def _fixing_exponents(self) -> tuple[int, ...]:
        return tuple(
            k
            for k in galois_group_exponents(self.conductor)
            if all(g.galois(k) == g for g in self.generators)
        )

    def _check_kroneckerian(self):
        for g in self.generators:
            if not self.field_contains(g.conj()):
                raise ValueError(f"subfield of {self.name} is not closed under conjugation")

    # -- queries ----------------------------------------------------------------

    def field_degree(self) -> int:
        if self._cyclo_subfield is not None:
            return euler_phi(self._cyclo_subfield)
        return len(self._basis)

    def fixing_exponents(self) -> tuple[int, ...]:
        """Exponents k of Gal(Q(zeta_N)/Q) automorphisms fixing K0 pointwise."""
        return self._fixing

    def _liftable(self, a: CycElement) -> bool:
        return self.conductor % a.conductor == 0

    def field_contains(self, a: CycElement) -> bool:
        """Membership in the subfield K0 (denominators ignored)."""
        if not self._liftable(a):
            return False
        a = a.lift(self.conductor)
        return all(a.galois(k) == a for k in self._fixing)

    def coords(self, a: CycElement) -> list[Fraction]:
        """Coordinates of a over the K0 basis; raises if a is outside K0."""
        if not self.field_contains(a):
            raise RingMembershipError(f"{a} is not in the field of {self.name}")
        a = a.lift(self.conductor)
        if self._cyclo_subfield is not None:
            m = self._cyclo_subfield
            step = self.conductor // m
            out = [Fraction(0)] * euler_phi(m)
            for e, c in a.coeffs.items():
                if e % step:
                    raise RingMembershipError(f"{a} not expressible over zeta_{m} powers")
                out[e // step] = c
            return out
        deg = euler_phi(self.conductor)
        cols = []
        for b in self._basis:
            v = [Fraction(0)] * deg
            for e, c in b.coeffs.items():
                v[e] = c
            cols.append(v)
        target = [Fraction(0)] * deg
        for e, c in a.coeffs.items():
            target[e] = c
        sol = _solve_rational(cols, target)
        if sol is None:
            raise RingMembershipError(f"{a} is not in the field of {self.name}")
        return sol

    def contains(self, a: CycElement) -> bool:
        """Full ring membership: subfield plus denominator constraint."""
        if not self.field_contains(a):
            return False
        if self.denominator_primes is None:
            return True
        try:
            cs = self.coords(a)
        except RingMembershipError:
            return False
        for c in cs:
            if not _prime_factors(c.denominator) <= self.denominator_primes:
                return False
        return True

    def contains_matrix(self, entries) -> bool:
        return all(self.contains(e) for e in entries)

    def automorphisms_fixing(self) -> list[GaloisAutomorphism]:
        return [GaloisAutomorphism(self.conductor, k) for k in self._fixing]

    def with_conductor(self, conductor: int) -> "RingSpec":
        """The same ring viewed inside a larger ambient cyclotomic field.

        The new ambient is the lcm of the current and requested conductors.
        """
        conductor = math.lcm(conductor, self.conductor)
        if conductor == self.conductor:
            return self
        return RingSpec(conductor, self.generators, self.denominator_primes, self.name)

    def __repr__(self) -> str:
        return f"RingSpec({self.name}, N={self.conductor})"


def _solve_rational(cols: list[list[Fraction]], target: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve sum_j x_j cols[j] = target over Q; None if inconsistent."""
    rows = len(target)
    ncols = len(cols)
    aug = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        f = aug[r][c]
        aug[r] = [x / f for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                g = aug[i][c]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][ncols]
    # With a genuine basis there are no free columns; verify.
    for i in range(rows):
        s = sum((sol[j] * cols[j][i] for j in range(ncols)), Fraction(0))
        if s != target[i]:
            return None
    return sol


def min_poly(a: CycElement, base: RingSpec) -> Polynomial:
    """Monic minimal polynomial of a over Frac(base).

    Computed as prod (x - beta) over the orbit of a under the automorphisms
    of the ambient field fixing the base subfield; irreducible and of
    minimal degree by construction.
    """
    if not base._liftable(a):
        base = base.with_conductor(math.lcm(base.conductor, a.conductor))
    a = a.lift(base.conductor)
    orbit: list[CycElement] = []
    for k in base.fixing_exponents():
        img = a.galois(k)
        if all(img != b for b in orbit):
            orbit.append(img)
    poly = Polynomial.one(base.conductor)
    for beta in orbit:
        poly = poly * Polynomial((-beta, CycElement.one(base.conductor)))
    return poly


@dataclass(frozen=True)
class RingTower:
    """An integral extension R in R[alpha] with alpha's minimal polynomial."""

    base: RingSpec
    alpha: CycElement
    minimal_polynomial: Polynomial
    degree: int

    @property
    def extension_conductor(self) -> int:
        return self.base.conductor

    def __repr__(self) -> str:
        return f"RingTower({self.base.name}[{self.alpha}], degree {self.degree})"


def make_tower(base: RingSpec, alpha: CycElement, *, require_integral: bool = True) -> RingTower:
    """Build R in R[alpha]; checks the minimal polynomial has coefficients in R.

    ``require_integral`` enforces that p's coefficients lie in the base ring
    itself (not just its field of fractions), which is what makes
    {1, alpha, ..., alpha^(d-1)} a free basis of R[alpha] over R and makes the
    generating-set condition of the embedding construction automatic.
    """
    if base.conductor % alpha.conductor:
        base = base.with_conductor(math.lcm(base.conductor, alpha.conductor))
    p = min_poly(alpha, base)
    if require_integral:
        for c in p.coeffs:
            if not base.contains(c):
                raise RingMembershipError(
                    f"minimal polynomial coefficient {c} of alpha={alpha} is not in {base.name}"
                )
    assert p(alpha.lift(base.conductor)).is_zero()
    return RingTower(base, alpha.lift(base.conductor), p, p.degree())


def extension_members_decompose(tower: RingTower, value: CycElement) -> list[CycElement]:
    """Write value = sum_j c_j alpha^j with c_j in Frac(base), via conjugates.

    Solves the Vandermonde system over the distinct conjugates of alpha; if
    value does not lie in Frac(base)[alpha], the recovered coefficients fail
    the invariance check and a RingMembershipError is raised.
    """
    base = tower.base
    n = base.conductor
    if n % value.conductor:
        raise RingMembershipError(
            f"{value} (conductor {value.conductor}) is outside Q(zeta_{n})"
        )
    value = value.lift(n)
    d = tower.degree
    sigmas = _coset_representatives(tower)
    vander = [[sigmas_a**j for j in range(d)] for sigmas_a in [tower.alpha.galois(k) for k in sigmas]]
    rhs = [value.galois(k) for k in sigmas]
    coeffs = _solve_cyc(vander, rhs)
    reconstructed = sum((c * tower.alpha**j for j, c in enumerate(coeffs)), CycElement.zero(n))
    if reconstructed != value or any(not base.field_contains(c) for c in coeffs):
        raise RingMembershipError(f"{value} is not in Frac({base.name})[alpha]")
    return coeffs


def _coset_representatives(tower: RingTower) -> list[int]:
    """Base-fixing exponents giving the d distinct conjugates of alpha."""
    seen: list[CycElement] = []
    reps: list[int] = []
    for k in tower.base.fixing_exponents():
        img = tower.alpha.galois(k)
        if all(img != b for b in seen):
            seen.append(img)
            reps.append(k)
    if len(reps) != tower.degree:
        raise ArithmeticError("conjugate count does not match tower degree")
    return reps


def _solve_cyc(matrix: list[list[CycElement]], rhs: list[CycElement]) -> list[CycElement]:
    """Solve a small square linear system over the cyclotomic field."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next(i for i in range(c, n) if not aug[i][c].is_zero())
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]
