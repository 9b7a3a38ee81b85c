"""Coefficient rings: the integers, the rationals, prime fields and residue rings.

Ring elements are plain Python values kept in a canonical form: ``int`` for
the integers, ``fractions.Fraction`` for the rationals and an ``int`` in
``[0, n)`` for residue rings.  A :class:`GroundRing` knows how to normalize,
add and multiply them; it never wraps individual elements, which keeps the
inner loops of the linear algebra cheap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

RingElement = Union[int, Fraction]

INTEGERS_KIND = "integers"
RATIONALS_KIND = "rationals"
PRIME_FIELD_KIND = "prime_field"
RESIDUE_KIND = "residue"


class RingParseError(ValueError):
    """Raised for a malformed ring string; ``position`` is a 0-based offset."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"invalid ring {text!r} at position {position}: {reason}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factor_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a direct sum of finite cyclic groups.

    ``orders`` are the orders of the summands; entries equal to 1 are ignored.
    """
    exponents: dict[int, list[int]] = {}
    for d in orders:
        if d < 1:
            raise ValueError(f"cyclic order must be positive, got {d}")
        for p, e in factorize(d).items():
            exponents.setdefault(p, []).append(e)
    if not exponents:
        return ()
    length = max(len(v) for v in exponents.values())
    factors = [1] * length
    for p, es in exponents.items():
        es.sort(reverse=True)
        for k, e in enumerate(es):
            factors[k] *= p**e
    return tuple(sorted(factors))


@dataclass(frozen=True)
class ModuleDescriptor:
    """A finitely generated module in invariant-factor form.

    ``free_rank`` counts copies of the ground ring itself; ``torsion`` lists the
    remaining cyclic factors by order, each dividing the next.  Over a residue
    ring Z/n a copy of Z/n is counted as free, so torsion entries are proper
    divisors of n.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion entries must exceed 1")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self, ring: "GroundRing") -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append(ring.name)
        elif self.free_rank > 1:
            parts.append(f"{ring.name}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion]}


ZERO_MODULE = ModuleDescriptor()


@dataclass(frozen=True)
class GroundRing:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind in (INTEGERS_KIND, RATIONALS_KIND):
            if self.n != 0:
                raise ValueError(f"{self.kind} take no modulus")
        elif self.kind == PRIME_FIELD_KIND:
            if not is_prime(self.n):
                raise ValueError(f"F_{self.n}: {self.n} is not prime")
        elif self.kind == RESIDUE_KIND:
            if self.n < 2:
                raise ValueError(f"Z/{self.n}: modulus must be at least 2")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # -- construction -----------------------------------------------------

    @staticmethod
    def parse(text: str) -> "GroundRing":
        """Parse ``Z``, ``Q``, ``F<p>`` or ``Z/<n>``."""
        if text == "Z":
            return INTEGERS
        if text == "Q":
            return RATIONALS
        m = re.fullmatch(r"F(\d+)", text)
        if m:
            p = int(m.group(1))
            if not is_prime(p):
                raise RingParseError(text, 1, f"{p} is not prime")
            return prime_field(p)
        m = re.fullmatch(r"Z/(\d+)", text)
        if m:
            n = int(m.group(1))
            if n < 2:
                raise RingParseError(text, 2, "modulus must be at least 2")
            return residue_ring(n)
        return _raise_parse(text)

    @property
    def name(self) -> str:
        return {
            INTEGERS_KIND: "Z",
            RATIONALS_KIND: "Q",
            PRIME_FIELD_KIND: f"F{self.n}",
            RESIDUE_KIND: f"Z/{self.n}",
        }[self.kind]

    def __str__(self) -> str:
        return self.name

    # -- structure --------------------------------------------------------

    @property
    def modulus(self) -> int | None:
        """0 for Z, n for Z/n and F_p, None for Q."""
        if self.kind == RATIONALS_KIND:
            return None
        return self.n

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS_KIND, PRIME_FIELD_KIND)

    @property
    def is_finite(self) -> bool:
        return self.kind in (PRIME_FIELD_KIND, RESIDUE_KIND)

    @property
    def two_is_unit(self) -> bool:
        return self.kind == RATIONALS_KIND or (self.is_finite and self.n % 2 == 1)

    def elements(self) -> Iterator[int]:
        if not self.is_finite:
            raise ValueError(f"{self.name} is infinite")
        return iter(range(self.n))

    # -- arithmetic -------------------------------------------------------

    def normalize(self, a) -> RingElement:
        if self.kind == INTEGERS_KIND:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError(f"{a} is not an integer")
                return a.numerator
            return int(a)
        if self.kind == RATIONALS_KIND:
            return Fraction(a)
        if isinstance(a, Fraction):
            if a.denominator != 1:
                return a.numerator * pow(a.denominator, -1, self.n) % self.n
            a = a.numerator
        return int(a) % self.n

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        if self.n:
            return (a + b) % self.n
        return a + b

    def sub(self, a: RingElement, b: RingElement) -> RingElement:
        if self.n:
            return (a - b) % self.n
        return a - b

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        if self.n:
            return (a * b) % self.n
        return a * b

    def neg(self, a: RingElement) -> RingElement:
        if self.n:
            return (-a) % self.n
        return -a

    def is_unit(self, a: RingElement) -> bool:
        if self.kind == INTEGERS_KIND:
            return a in (1, -1)
        if self.kind == RATIONALS_KIND:
            return a != 0
        return math.gcd(a, self.n) == 1

    def inverse(self, a: RingElement) -> RingElement:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self.name}")
        if self.kind == INTEGERS_KIND:
            return a
        if self.kind == RATIONALS_KIND:
            return 1 / Fraction(a)
        return pow(a, -1, self.n)

    def units(self) -> list[RingElement]:
        """All units of a finite ring, or the units ±1 of Z."""
        if self.kind == INTEGERS_KIND:
            return [1, -1]
        return [a for a in self.elements() if self.is_unit(a)]

    def format(self, a: RingElement) -> str:
        return str(a)

    # -- modules over the ring ---------------------------------------------

    def cyclic_quotient_order(self, d: int) -> int:
        """Order of kappa/d*kappa as used by :func:`cyclic_sum` (0 = free)."""
        if self.kind == INTEGERS_KIND:
            return abs(d)
        if self.kind == RATIONALS_KIND:
            return 0 if d == 0 else 1
        g = math.gcd(d, self.n)
        return 0 if g == self.n else g


def _raise_parse(text: str) -> GroundRing:
    if not text:
        raise RingParseError(text, 0, "empty ring string")
    if text[0] not in "ZQF":
        raise RingParseError(text, 0, "expected one of Z, Q, F<p>, Z/<n>")
    if text[0] == "Q":
        raise RingParseError(text, 1, "unexpected trailing characters")
    if text[0] == "F":
        pos = 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        reason = "expected a prime" if pos == 1 else "unexpected character"
        raise RingParseError(text, pos, reason)
    # starts with Z
    if len(text) == 1 or text[1] != "/":
        raise RingParseError(text, 1, "expected '/' after Z")
    pos = 2
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    reason = "expected a modulus" if pos == 2 else "unexpected character"
    raise RingParseError(text, pos, reason)


INTEGERS = GroundRing(INTEGERS_KIND)
RATIONALS = GroundRing(RATIONALS_KIND)


def prime_field(p: int) -> GroundRing:
    return GroundRing(PRIME_FIELD_KIND, p)


def residue_ring(n: int) -> GroundRing:
    return GroundRing(RESIDUE_KIND, n)


def cyclic_sum(orders: Iterable[int], ring: GroundRing) -> ModuleDescriptor:
    """Canonical descriptor of the direct sum of the modules kappa/d*kappa.

    An order of 0 contributes a free summand.  For a residue ring Z/n a summand
    Z/n (from d = 0 or any multiple of n) is free; e.g. over Z/6 the sum
    Z/2 + Z/3 collapses to one free copy.
    """
    free = 0
    finite: list[int] = []
    for d in orders:
        o = ring.cyclic_quotient_order(d)
        if o == 0:
            free += 1
        elif o > 1:
            finite.append(o)
    factors = invariant_factor_chain(finite)
    if ring.is_finite:
        n = ring.n
        free += sum(1 for d in factors if d == n)
        factors = tuple(d for d in factors if d != n)
    return ModuleDescriptor(free, factors)


def direct_sum(modules: Iterable[ModuleDescriptor], ring: GroundRing) -> ModuleDescriptor:
    orders: list[int] = []
    for m in modules:
        orders.extend([0] * m.free_rank)
        orders.extend(m.torsion)
    return cyclic_sum(orders, ring)


def ring_arithmetic(ring: GroundRing, a: RingElement, b: RingElement) -> dict[str, RingElement]:
    return {"sum": ring.add(a, b), "product": ring.mul(a, b), "negation_of_a": ring.neg(a)}


def two_torsion(ring: GroundRing) -> ModuleDescriptor:
    """The 2-torsion submodule {a : 2a = 0} of the ring, as a module."""
    if ring.kind in (INTEGERS_KIND, RATIONALS_KIND):
        return ZERO_MODULE
    return cyclic_sum([math.gcd(2, ring.n)], ring)


def two_torsion_generator(ring: GroundRing) -> RingElement | None:
    """A generator of the 2-torsion submodule, or None when it is zero."""
    if ring.is_finite and ring.n % 2 == 0:
        return ring.n // 2
    return None


def mod_two_quotient(ring: GroundRing) -> ModuleDescriptor:
    """The quotient of the ring by its ideal of doubles."""
    return cyclic_sum([2], ring)
