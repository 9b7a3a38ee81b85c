"""Splitting the Hochschild complex of A along necklaces.

Every simplex lies in the summand named by the necklace its generators spell,
and the structure maps preserve that necklace.  This module builds

* the normalized complex of one summand (non-degenerate simplices only),
* the unnormalized complex of one summand, truncated at a chosen degree,
* the whole unnormalized complex, used as a brute-force oracle,

and combines per-summand homology into HH_q(A).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .algebra import ONE, Chain, Simplex, all_simplices, boundary_of_simplex, is_degenerate, summand_of
from .homology import ChainComplex, HomologyDescriptor, homology_at
from .linalg import Matrix
from .rings import GroundRing, ModuleDescriptor, direct_sum
from .words import CyclicalWord, enumerate_necklaces

DEFAULT_BUDGET = 20_000


class BudgetExceeded(RuntimeError):
    def __init__(self, degree: int, dimension: int, budget: int, what: str = "basis simplices in degree"):
        self.degree = degree
        self.dimension = dimension
        self.budget = budget
        super().__init__(f"{dimension} {what} {degree}, over the budget of {budget}")


def summand_basis(word: CyclicalWord, q: int) -> list[Simplex]:
    """Non-degenerate q-simplices in the summand of ``word``.

    For a word of length m >= 1 these are the rotations of the word in degree
    m-1 and the same rotations behind a leading 1 in degree m, each listed in
    the order t^0, t^1, ... applied to the representative.
    """
    m = word.length
    if m == 0:
        return [(ONE,)] if q == 0 else []
    if q == m - 1:
        return list(word.rotations())
    if q == m:
        return [(ONE,) + w for w in word.rotations()]
    return []


def _differentials(bases: list[list[Simplex]], ring: GroundRing, normalized: bool) -> dict[int, Matrix]:
    out = {}
    for q in range(1, len(bases)):
        index = {s: k for k, s in enumerate(bases[q - 1])}
        cols = []
        for s in bases[q]:
            col = {}
            for f, c in boundary_of_simplex(s).items():
                if normalized and is_degenerate(f):
                    continue
                col[index[f]] = col.get(index[f], 0) + c
            cols.append(col)
        out[q] = Matrix(len(bases[q - 1]), len(bases[q]), cols, ring)
    return out


@lru_cache(maxsize=4096)
def build_summand_complex(word: CyclicalWord, ring: GroundRing, top: int | None = None) -> ChainComplex:
    """Normalized complex D_* of one summand, over degrees 0..top (default m+1).

    The differential applies the Hochschild boundary and discards degenerate
    faces, which is the differential of the quotient by degenerate simplices.
    """
    if top is None:
        top = word.length + 1
    bases = [summand_basis(word, q) for q in range(top + 1)]
    return ChainComplex(ring, bases, _differentials(bases, ring, normalized=True))


def unnormalized_summand_basis(word: CyclicalWord, n: int) -> list[Simplex]:
    """All n-simplices (degenerate ones included) in the summand of ``word``."""
    m = word.length
    if m == 0:
        return [(ONE,) * (n + 1)]
    out = []
    for rot in word.rotations():
        for slots in itertools.combinations(range(n + 1), m):
            s = [ONE] * (n + 1)
            for pos, letter in zip(slots, rot):
                s[pos] = letter
            out.append(tuple(s))
    return sorted(set(out))


def build_unnormalized_summand_complex(word: CyclicalWord, ring: GroundRing, top: int,
                                       budget: int = DEFAULT_BUDGET) -> ChainComplex:
    bases = []
    for n in range(top + 1):
        b = unnormalized_summand_basis(word, n)
        if len(b) > budget:
            raise BudgetExceeded(n, len(b), budget)
        bases.append(b)
    return ChainComplex(ring, bases, _differentials(bases, ring, normalized=False))


def build_full_complex(r: int, ring: GroundRing, top_homology_degree: int,
                       budget: int = DEFAULT_BUDGET) -> ChainComplex:
    """The whole unnormalized Hochschild complex in degrees 0..N+1."""
    if r < 1:
        raise ValueError("need at least one generator")
    N = top_homology_degree
    for n in range(N + 2):
        dim = (r + 1) ** (n + 1)
        if dim > budget:
            raise BudgetExceeded(n, dim, budget)
    bases = [all_simplices(r, n) for n in range(N + 2)]
    return ChainComplex(ring, bases, _differentials(bases, ring, normalized=False), check=False)


def decompose_chain(c: Chain) -> dict[CyclicalWord, Chain]:
    """Split a chain into its components along the necklace decomposition."""
    parts: dict[CyclicalWord, list] = {}
    for s, coef in c.terms.items():
        parts.setdefault(summand_of(s), []).append((s, coef))
    return {w: Chain(terms, c.degree, c.ring) for w, terms in sorted(parts.items())}


def project(c: Chain, word: CyclicalWord) -> Chain:
    """The component of ``c`` in the summand of ``word`` (pr_[w])."""
    return decompose_chain(c).get(word, Chain.zero(c.degree, c.ring))


def summand_homology(word: CyclicalWord, ring: GroundRing, q: int) -> HomologyDescriptor:
    """H_q of the normalized complex of one summand; zero outside degrees m-1, m."""
    m = word.length
    if q > m:
        return HomologyDescriptor(ModuleDescriptor(), q, ())
    return _summand_homology(word, ring, q)


@lru_cache(maxsize=16384)
def _summand_homology(word: CyclicalWord, ring: GroundRing, q: int) -> HomologyDescriptor:
    return homology_at(build_summand_complex(word, ring), q)


def contributing_necklaces(r: int, q: int) -> list[CyclicalWord]:
    """Necklaces whose summand can have homology in degree q."""
    return enumerate_necklaces(r, q) + enumerate_necklaces(r, q + 1)


def summand_breakdown(r: int, ring: GroundRing, q: int) -> list[tuple[CyclicalWord, HomologyDescriptor]]:
    return [(w, summand_homology(w, ring, q)) for w in contributing_necklaces(r, q)]


def aggregate_homology(r: int, ring: GroundRing, q: int) -> HomologyDescriptor:
    """HH_q(A) as the direct sum of the summand homologies."""
    parts = summand_breakdown(r, ring, q)
    return HomologyDescriptor(direct_sum([h.module for _, h in parts], ring), q, None)
