import random
from fractions import Fraction

import pytest

from catembed.cyclotomic import (
    CycElement,
    cos_2pi_over,
    imag_unit,
    omega3,
    rational,
    sqrt2,
    sqrt5,
    zeta,
)
from catembed.matrix import Polynomial
from catembed.rings import (
    RingMembershipError,
    RingSpec,
    extension_members_decompose,
    make_tower,
    min_poly,
)

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def rings():
    return {
        "Q": RingSpec.rationals(None, name="Q"),
        "Z": RingSpec.rationals(frozenset(), name="Z"),
        "D": RingSpec.rationals(frozenset({2}), conductor=8, name="D"),
        "D[i]": RingSpec(8, [imag_unit()], frozenset({2}), "D[i]"),
        "D[omega8]": RingSpec(24, [zeta(8)], frozenset({2}), "D[omega8]"),
        "CT": RingSpec(40, [sqrt2(), imag_unit()], frozenset({2}), "Z[1/2,sqrt2,i]"),
    }


def test_membership_examples(rings):
    assert not rings["D[omega8]"].contains(omega3())
    assert rings["CT"].contains(HALF * (-1 + imag_unit()))
    assert not rings["Z"].contains(rational(HALF))
    assert rings["Q"].contains(rational(HALF))
    assert rings["D"].contains(sqrt2() / 2) is False  # sqrt2 outside Q
    assert rings["D[omega8]"].contains(sqrt2() / 2)
    # same ring, two presentations
    assert rings["CT"].contains(zeta(8))
    assert rings["D[omega8]"].with_conductor(40).contains(sqrt2() * imag_unit())


def test_non_kroneckerian_rejected():
    # the span of zeta_5 alone (without its conjugate powers... Q(zeta_5) is
    # conjugation-closed, so build something that is not: a single primitive
    # element whose span misses the conjugate is impossible for fields --
    # instead check the constructor accepts conjugation-closed input.
    RingSpec(5, [zeta(5)], frozenset())  # fine: field closed under conj


def test_denominator_primes(rings):
    five_half = CycElement.rational(Fraction(1, 5))
    assert not rings["D"].contains(five_half)
    assert RingSpec.rationals(frozenset({5})).contains(five_half)
    assert not RingSpec.rationals(frozenset({5})).contains(rational(HALF))


def test_min_poly_examples(rings):
    assert min_poly(sqrt5(), rings["Q"]) == Polynomial.from_rational_coeffs([-5, 0, 1])
    # derived: x^2 - i (the printed source has x^2 + i, which omega8 does not satisfy)
    p1 = min_poly(zeta(8), RingSpec(8, [imag_unit()], frozenset({2}), "D[i]"))
    assert p1 == Polynomial([-imag_unit(), 0, 1])
    assert p1(zeta(8)).is_zero()
    assert min_poly(zeta(5), rings["CT"]) == Polynomial.from_rational_coeffs([1, 1, 1, 1, 1])
    assert min_poly(omega3(), rings["D[omega8]"]) == Polynomial.from_rational_coeffs([1, 1, 1])
    # derived: x^2 + x/2 - 1/4 for cos(2 pi/5) (printed constant has the wrong sign)
    assert min_poly(cos_2pi_over(5), rings["CT"]) == Polynomial.from_rational_coeffs(
        [Fraction(-1, 4), HALF, 1]
    )
    # derived: x^2 - 2 cos(2 pi/5) x + 1 for zeta_5 over the cosine ring
    rc = RingSpec(40, [sqrt2(), imag_unit(), cos_2pi_over(5)], frozenset({2}), "R[c]")
    c = cos_2pi_over(5)
    assert min_poly(zeta(5), rc) == Polynomial([1, (-2) * c, 1])


def test_min_poly_properties(rings):
    rng = random.Random(7)
    for _ in range(10):
        a = CycElement(24, {rng.randrange(24): Fraction(rng.randint(-2, 2)) for _ in range(2)})
        for base in (rings["Q"], rings["D[i]"].with_conductor(24)):
            p = min_poly(a, base)
            assert p.is_monic()
            assert p(a.lift(24)).is_zero()
            assert base.field_degree() * p.degree() <= 24  # degree divides extension degree
            # dividing: [Q(z24) : K0] = phi(24)/deg(K0); p degree divides it
            assert (8 // base.field_degree()) % p.degree() == 0


def test_power_of_two_tower_min_poly():
    for k in (3, 10, 20):
        base = RingSpec.cyclotomic(2 ** (k - 1), frozenset(), conductor=2**k)
        p = min_poly(zeta(2**k), base)
        assert p == Polynomial([-zeta(2 ** (k - 1)), CycElement.zero(), CycElement.one()])


def test_tower_and_decomposition(rings):
    tw = make_tower(rings["Q"], sqrt5())
    assert tw.degree == 2
    cs = extension_members_decompose(tw, 3 + 2 * sqrt5())
    assert cs[0] == rational(3) and cs[1] == rational(2)
    # round trip uniqueness on random members
    rng = random.Random(3)
    for _ in range(20):
        c0 = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        c1 = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        value = rational(c0) + rational(c1) * sqrt5()
        cs = extension_members_decompose(tw, value)
        assert cs[0] == rational(c0) and cs[1] == rational(c1)
    with pytest.raises(RingMembershipError):
        extension_members_decompose(tw, zeta(3))


def test_tower_requires_integral_min_poly(rings):
    # cos(2 pi/5) has minimal polynomial with denominator 4 over Z
    with pytest.raises(RingMembershipError):
        make_tower(RingSpec.rationals(frozenset(), conductor=5, name="Z"), cos_2pi_over(5))
    # but over D = Z[1/2] the tower is integral
    tw = make_tower(RingSpec.rationals(frozenset({2}), conductor=5, name="D"), cos_2pi_over(5))
    assert tw.degree == 2


def test_ring_closure_under_operations(rings):
    rng = random.Random(11)
    ring = rings["D[omega8]"]

    def random_member():
        return sum(
            (CycElement(8, {j: Fraction(rng.randint(-3, 3), 2 ** rng.randint(0, 3))}) for j in range(4)),
            CycElement.zero(8),
        )

    for _ in range(40):
        a, b = random_member(), random_member()
        assert ring.contains(a) and ring.contains(b)
        assert ring.contains(a + b)
        assert ring.contains(a * b)
        assert ring.contains(a.conj())


def test_coords_roundtrip(rings):
    ring = rings["CT"]
    a = HALF * (-1 + imag_unit()) + sqrt2() * 3
    cs = ring.coords(a)
    rebuilt = sum((c * b for c, b in zip(cs, ring._basis)), CycElement.zero(40))
    assert rebuilt == a.lift(40)
