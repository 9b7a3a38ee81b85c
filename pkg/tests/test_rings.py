import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from squarezero.rings import (
    INTEGERS,
    RATIONALS,
    GroundRing,
    ModuleDescriptor,
    RingParseError,
    cyclic_sum,
    direct_sum,
    invariant_factor_chain,
    is_prime,
    mod_two_quotient,
    prime_field,
    residue_ring,
    ring_arithmetic,
    two_torsion,
    two_torsion_generator,
)

RINGS = [INTEGERS, RATIONALS, prime_field(2), prime_field(3), prime_field(5), residue_ring(4), residue_ring(6)]


def sample(ring, rng):
    if ring == RATIONALS:
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))
    return ring.normalize(rng.randint(-100, 100))


def test_arithmetic_examples():
    Z4 = residue_ring(4)
    assert ring_arithmetic(Z4, 3, 3)["sum"] == 2
    assert ring_arithmetic(Z4, 3, 3)["product"] == 1
    half = Fraction(1, 2)
    out = ring_arithmetic(RATIONALS, half, half)
    assert out["sum"] == 1 and out["product"] == Fraction(1, 4)
    out = ring_arithmetic(INTEGERS, 0, 17)
    assert out["sum"] == 17 and out["product"] == 0


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_axioms(ring):
    rng = random.Random(f"axioms:{ring}")
    for _ in range(1000):
        a, b, c = (sample(ring, rng) for _ in range(3))
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.add(a, ring.neg(a)) == 0
        assert ring.mul(a, 1) == a


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_normalization_idempotent(ring):
    rng = random.Random(f"norm:{ring}")
    for _ in range(200):
        a = sample(ring, rng)
        assert ring.normalize(a) == a
        assert ring.normalize(ring.normalize(a * 7)) == ring.normalize(a * 7)


def test_canonical_forms():
    assert residue_ring(6).normalize(-1) == 5
    assert RATIONALS.normalize(Fraction(4, -6)) == Fraction(-2, 3)
    assert prime_field(3).normalize(7) == 1


@pytest.mark.parametrize("ring", [R for R in RINGS if R != INTEGERS], ids=str)
def test_inverses(ring):
    rng = random.Random(f"inv:{ring}")
    for _ in range(200):
        a = sample(ring, rng)
        if ring.is_unit(a):
            assert ring.mul(a, ring.inverse(a)) == 1


def test_units():
    assert residue_ring(6).units() == [1, 5]
    assert INTEGERS.units() == [1, -1]
    with pytest.raises(ZeroDivisionError):
        INTEGERS.inverse(2)


@pytest.mark.parametrize("text,ring", [
    ("Z", INTEGERS), ("Q", RATIONALS), ("F2", prime_field(2)), ("F3", prime_field(3)),
    ("Z/4", residue_ring(4)), ("Z/6", residue_ring(6)),
])
def test_parse(text, ring):
    assert GroundRing.parse(text) == ring
    assert ring.name == text


@pytest.mark.parametrize("text,position", [
    ("F4", 1), ("Z/1", 2), ("Z/x", 2), ("R", 0), ("", 0), ("z", 0), ("F", 1), ("Z/", 2), ("Z4", 1),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(RingParseError) as info:
        GroundRing.parse(text)
    assert info.value.position == position


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        prime_field(9)
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_two_torsion_examples():
    assert two_torsion(INTEGERS).is_zero
    assert two_torsion(residue_ring(4)) == ModuleDescriptor(0, (2,))
    assert two_torsion_generator(residue_ring(4)) == 2
    assert two_torsion(prime_field(2)) == ModuleDescriptor(1, ())


def test_mod_two_quotient_examples():
    assert mod_two_quotient(RATIONALS).is_zero
    assert mod_two_quotient(INTEGERS) == ModuleDescriptor(0, (2,))
    assert mod_two_quotient(residue_ring(6)) == ModuleDescriptor(0, (2,))


@pytest.mark.parametrize("ring", RINGS + [prime_field(7), residue_ring(9), residue_ring(12)], ids=str)
def test_two_modules_vanish_iff_two_is_unit(ring):
    both_zero = two_torsion(ring).is_zero and mod_two_quotient(ring).is_zero
    assert both_zero == ring.two_is_unit


@pytest.mark.parametrize("ring", [R for R in RINGS if R.is_finite], ids=str)
def test_two_torsion_by_enumeration(ring):
    count = sum(1 for a in ring.elements() if ring.mul(2, a) == 0)
    M = two_torsion(ring)
    order = ring.n ** M.free_rank
    for d in M.torsion:
        order *= d
    assert order == count


def test_module_descriptor_validation():
    with pytest.raises(ValueError):
        ModuleDescriptor(0, (4, 2))
    with pytest.raises(ValueError):
        ModuleDescriptor(0, (1,))
    with pytest.raises(ValueError):
        ModuleDescriptor(-1, ())


def test_cyclic_sums_over_residue_rings():
    Z6 = residue_ring(6)
    # Z/2 + Z/3 is cyclic of order 6, a free Z/6-module
    assert cyclic_sum([2, 3], Z6) == ModuleDescriptor(1, ())
    assert cyclic_sum([0], Z6) == ModuleDescriptor(1, ())
    assert cyclic_sum([2, 2], residue_ring(4)) == ModuleDescriptor(0, (2, 2))
    assert direct_sum([ModuleDescriptor(1, (2,)), ModuleDescriptor(2, (3,))], INTEGERS) == ModuleDescriptor(3, (6,))


@given(st.lists(st.integers(min_value=2, max_value=60), max_size=6))
def test_invariant_factor_chain_preserves_order(orders):
    chain = invariant_factor_chain(orders)
    prod_in = 1
    for d in orders:
        prod_in *= d
    prod_out = 1
    for d in chain:
        prod_out *= d
    assert prod_in == prod_out
    assert all(b % a == 0 for a, b in zip(chain, chain[1:]))


def test_describe_and_json():
    M = ModuleDescriptor(2, (2, 4))
    assert M.describe(INTEGERS) == "Z^2 + Z/2 + Z/4"
    assert M.to_json() == {"free_rank": 2, "torsion": ["2", "4"]}
    assert ModuleDescriptor().describe(RATIONALS) == "0"
