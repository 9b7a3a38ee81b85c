"""The algebra A = k[x1..xr]/(xi xj) and its cyclic bar construction.

A basis element of A is encoded as an int: 0 is the unit 1 and i >= 1 is the
generator x_i.  A simplex of degree n is a tuple of n+1 such codes, read as
the elementary tensor a0 (x) a1 (x) ... (x) an.  Tuples compare
lexicographically with 1 < x1 < ... < xr, which fixes every basis ordering
downstream.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping

from .rings import INTEGERS, GroundRing, RingElement
from .words import CyclicalWord, canonicalize

ONE = 0
Simplex = tuple[int, ...]

TENSOR = "⊗"


def mul_basis(a: int, b: int) -> int | None:
    """Product of two basis elements; None stands for zero."""
    if a == ONE:
        return b
    if b == ONE:
        return a
    return None


def degree(s: Simplex) -> int:
    return len(s) - 1


def _face(s: Simplex, i: int) -> Simplex | None:
    n = len(s) - 1
    if i < n:
        p = mul_basis(s[i], s[i + 1])
        if p is None:
            return None
        return s[:i] + (p,) + s[i + 2:]
    p = mul_basis(s[n], s[0])
    if p is None:
        return None
    return (p,) + s[1:n]


def _check_index(s: Simplex, i: int, low_degree: int = 0):
    n = len(s) - 1
    if n < low_degree:
        raise ValueError(f"operator needs a simplex of degree >= {low_degree}, got {n}")
    if not 0 <= i <= n:
        raise IndexError(f"index {i} out of range 0..{n}")


def face(s: Simplex, i: int) -> "Chain":
    """The face d_i(s) as a chain (zero when the product in A vanishes)."""
    _check_index(s, i, 1)
    f = _face(s, i)
    if f is None:
        return Chain.zero(len(s) - 2)
    return Chain({f: 1}, len(s) - 2)


def face_simplex(s: Simplex, i: int) -> Simplex | None:
    _check_index(s, i, 1)
    return _face(s, i)


def degeneracy(s: Simplex, i: int) -> Simplex:
    """s_i inserts the unit after slot i."""
    _check_index(s, i)
    return s[: i + 1] + (ONE,) + s[i + 1:]


def cyclic_op(s: Simplex) -> Simplex:
    """t_n moves the last tensor factor to the front, without sign."""
    return s[-1:] + s[:-1]


def is_degenerate(s: Simplex) -> bool:
    return ONE in s[1:]


def letters(s: Simplex) -> tuple[int, ...]:
    return tuple(a for a in s if a != ONE)


def summand_of(s: Simplex) -> CyclicalWord:
    """The necklace spelled by the generators of ``s`` in slot order."""
    return canonicalize(letters(s))


def format_simplex(s: Simplex) -> str:
    return TENSOR.join("1" if a == ONE else f"x{a}" for a in s)


def parse_simplex(text: str) -> Simplex:
    out = []
    for token in text.replace("(x)", TENSOR).split(TENSOR):
        token = token.strip()
        if token == "1":
            out.append(ONE)
        elif token.startswith("x") and token[1:].isdigit() and int(token[1:]) > 0:
            out.append(int(token[1:]))
        else:
            raise ValueError(f"bad tensor factor {token!r}")
    return tuple(out)


class Chain:
    """A finite linear combination of simplices of one degree.

    Coefficients live in ``ring`` and are stored only when nonzero.  Chains are
    treated as immutable values.
    """

    __slots__ = ("_terms", "degree", "ring")

    def __init__(self, terms: Mapping[Simplex, RingElement] | Iterable, degree: int,
                 ring: GroundRing = INTEGERS):
        self.degree = degree
        self.ring = ring
        acc: dict[Simplex, RingElement] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for s, c in items:
            if len(s) != degree + 1:
                raise ValueError(f"simplex {s} does not have degree {degree}")
            c = ring.normalize(c)
            acc[s] = ring.add(acc[s], c) if s in acc else c
        self._terms = {s: c for s, c in acc.items() if c != 0}

    @classmethod
    def zero(cls, degree: int, ring: GroundRing = INTEGERS) -> "Chain":
        return cls({}, degree, ring)

    @classmethod
    def of(cls, s: Simplex, coefficient: RingElement = 1, ring: GroundRing = INTEGERS) -> "Chain":
        return cls({s: coefficient}, len(s) - 1, ring)

    @property
    def terms(self) -> dict[Simplex, RingElement]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Simplex, RingElement]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, s: Simplex) -> RingElement:
        return self._terms.get(s, self.ring.normalize(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def over(self, ring: GroundRing) -> "Chain":
        return Chain(self._terms, self.degree, ring)

    def _check(self, other: "Chain"):
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch {self.ring} vs {other.ring}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        return Chain(list(self._terms.items()) + list(other._terms.items()), self.degree, self.ring)

    def __neg__(self) -> "Chain":
        return Chain({s: self.ring.neg(c) for s, c in self._terms.items()}, self.degree, self.ring)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, a: RingElement) -> "Chain":
        a = self.ring.normalize(a)
        return Chain({s: self.ring.mul(a, c) for s, c in self._terms.items()}, self.degree, self.ring)

    def __rmul__(self, a: RingElement) -> "Chain":
        return self.scale(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.degree, self.ring, self._terms) == (other.degree, other.ring, other._terms)

    def __hash__(self):
        return hash((self.degree, self.ring, frozenset(self._terms.items())))

    def map_simplices(self, f) -> "Chain":
        """Apply a simplex-to-simplex map linearly."""
        out = [(f(s), c) for s, c in self._terms.items()]
        degree = len(out[0][0]) - 1 if out else self.degree
        return Chain(out, degree, self.ring)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s, c in self.items():
            c = _signed(c, self.ring)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = format_simplex(s) if mag == 1 else f"{mag}*{format_simplex(s)}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Chain({self}, degree={self.degree}, ring={self.ring})"


def _signed(c: RingElement, ring: GroundRing):
    """Symmetric representative of a residue, for display only."""
    if ring.is_finite and c > ring.n // 2:
        return c - ring.n
    return c


def boundary(c: Chain) -> Chain:
    """Hochschild boundary b = sum_i (-1)^i d_i on the unnormalized complex."""
    if c.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    n = c.degree
    out: list[tuple[Simplex, RingElement]] = []
    for s, coef in c._terms.items():
        for i in range(n + 1):
            f = _face(s, i)
            if f is not None:
                out.append((f, coef if i % 2 == 0 else c.ring.neg(coef)))
    return Chain(out, n - 1, c.ring)


def boundary_of_simplex(s: Simplex) -> dict[Simplex, int]:
    """Integer boundary coefficients of a single simplex."""
    out: dict[Simplex, int] = {}
    for i in range(len(s)):
        f = _face(s, i)
        if f is not None:
            out[f] = out.get(f, 0) + (1 if i % 2 == 0 else -1)
    return {f: c for f, c in out.items() if c}


def all_simplices(r: int, n: int) -> list[Simplex]:
    """Every degree-n simplex over the basis {1, x1..xr}, in lexicographic order."""
    return list(itertools.product(range(r + 1), repeat=n + 1))
