"""Predicted homology of each summand and the explicit comparison data behind it.

For a necklace of length m and period l the normalized summand complex is
concentrated in degrees m-1 and m, both of rank l.  Up to signs on the basis
it is the group ring k[C_l] mapped to itself by 1 - tau (m odd or l even) or
by 1 + tau (m even, l odd).  This module states the answer, writes down the
explicit cycles, builds the group-ring complexes and the sign-twisted basis
maps onto the summand complexes, and checks the four-term exact sequence that
computes the kernel and cokernel of 1 + tau.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ONE, Chain, Simplex, cyclic_op, degeneracy
from .homology import ChainComplex, generates, homology_at
from .linalg import Matrix, RowModule, left_kernel
from .rings import (
    INTEGERS,
    ZERO_MODULE,
    GroundRing,
    ModuleDescriptor,
    RingElement,
    cyclic_sum,
    mod_two_quotient,
    two_torsion,
    two_torsion_generator,
)
from .summands import build_summand_complex
from .words import CyclicalWord

ZERO = "Zero"
FREE_RANK_ONE = "FreeRankOne"
QUOTIENT_BY_TWO = "QuotientByTwo"
TWO_TORSION = "TwoTorsion"


def lemma_case(word: CyclicalWord) -> int:
    m, period = word.length, word.period
    if m == 0:
        return 1
    if m % 2 == 1 or period % 2 == 0:
        return 2
    return 3


@dataclass(frozen=True)
class LemmaPrediction:
    word: CyclicalWord
    ring: GroundRing
    case: int
    symbols: dict = field(compare=False)
    modules: dict = field(compare=False)

    def symbol_at(self, q: int) -> str:
        return self.symbols.get(q, ZERO)

    def module_at(self, q: int) -> ModuleDescriptor:
        return self.modules.get(q, ZERO_MODULE)


def predict(word: CyclicalWord, ring: GroundRing) -> LemmaPrediction:
    """Closed-form homology of the summand of ``word`` over ``ring``."""
    case = lemma_case(word)
    m = word.length
    free = cyclic_sum([0], ring)
    if case == 1:
        symbols = {0: FREE_RANK_ONE}
    elif case == 2:
        symbols = {m - 1: FREE_RANK_ONE, m: FREE_RANK_ONE}
    else:
        symbols = {m - 1: QUOTIENT_BY_TWO, m: TWO_TORSION}
    concrete = {FREE_RANK_ONE: free, QUOTIENT_BY_TWO: mod_two_quotient(ring), TWO_TORSION: two_torsion(ring)}
    modules = {q: concrete[s] for q, s in symbols.items()}
    return LemmaPrediction(word, ring, case, symbols, modules)


def _word_simplex(word: CyclicalWord) -> Simplex:
    return tuple(word.representative)


def _power(f, s: Simplex, u: int) -> Simplex:
    for _ in range(u):
        s = f(s)
    return s


def _high_term(word: CyclicalWord, u: int) -> Simplex:
    """t_m s_{m-1} t_{m-1}^u applied to the word simplex."""
    m = word.length
    return cyclic_op(degeneracy(_power(cyclic_op, _word_simplex(word), u), m - 1))


def _sign_exponent(word: CyclicalWord) -> int:
    """Per-step sign exponent: m-1 in case 2, m in case 3."""
    return word.length - 1 if lemma_case(word) == 2 else word.length


def generator_low(word: CyclicalWord, ring: GroundRing | None = None) -> Chain:
    """The cycle spelled by the representative word (the cycle 1 for the empty word)."""
    ring = ring or INTEGERS
    if word.length == 0:
        return Chain.of((ONE,), 1, ring)
    return Chain.of(_word_simplex(word), 1, ring)


def generator_high(word: CyclicalWord, ring: GroundRing | None = None, a: RingElement | None = None) -> Chain:
    """a * sum_u (+-1)^u t_m s_{m-1} t_{m-1}^u (word) in degree m.

    In case 3 ``a`` must be 2-torsion; it defaults to a generator of the
    2-torsion (or 0 when there is none, giving the zero chain).
    """
    ring = ring or INTEGERS
    m = word.length
    if m == 0:
        raise ValueError("the empty word has no degree-m generator")
    case = lemma_case(word)
    if a is None:
        a = 1 if case == 2 else (two_torsion_generator(ring) or 0)
    a = ring.normalize(a)
    if case == 3 and ring.mul(2, a) != 0:
        raise ValueError(f"{a} is not 2-torsion in {ring}")
    e = _sign_exponent(word)
    terms = [(_high_term(word, u), a if (e * u) % 2 == 0 else ring.neg(a)) for u in range(word.period)]
    return Chain(terms, m, ring)


# -- group ring complexes ----------------------------------------------------


def tau_label(u: int) -> str:
    return f"tau^{u}"


@dataclass
class ReferenceComplex:
    """k[C_l] in degrees m-1 and m with differential 1 - tau or 1 + tau."""

    word: CyclicalWord
    ring: GroundRing
    period: int
    sign: str
    complex: ChainComplex

    @property
    def differential(self) -> Matrix:
        return self.complex.differential(self.word.length)


def one_plus_minus_tau(period: int, sign: int, ring: GroundRing) -> Matrix:
    """Multiplication by 1 + sign*tau on k[C_l], columns indexed by tau^u."""
    cols = []
    for u in range(period):
        col = {u: 1}
        v = (u + 1) % period
        col[v] = col.get(v, 0) + sign
        cols.append(col)
    return Matrix(period, period, cols, ring)


def norm_vector(period: int) -> dict[int, int]:
    return {u: 1 for u in range(period)}


def reference_complex(word: CyclicalWord, ring: GroundRing) -> ReferenceComplex:
    m = word.length
    if m == 0:
        raise ValueError("no group-ring model for the empty word")
    period = word.period
    case = lemma_case(word)
    sign = -1 if case == 2 else 1
    labels = [tau_label(u) for u in range(period)]
    bases = [labels if q in (m - 1, m) else [] for q in range(m + 2)]
    d = one_plus_minus_tau(period, sign, ring)
    complex_ = ChainComplex(ring, bases, {m: d})
    return ReferenceComplex(word, ring, period, "minus" if sign < 0 else "plus", complex_)


@dataclass
class ComparisonMap:
    """The basis map from the group-ring complex onto the summand complex."""

    word: CyclicalWord
    ring: GroundRing
    low: Matrix
    high: Matrix
    commutes: bool
    bijective_on_bases: bool
    unit_maps_to_low_generator: bool
    norm_maps_to_high_generator: bool
    homology_matches_prediction: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.commutes and self.bijective_on_bases


def _signed_permutation(M: Matrix) -> bool:
    if M.nrows != M.ncols:
        return False
    seen = set()
    for col in M.columns():
        if len(col) != 1:
            return False
        (i, x), = col.items()
        if i in seen or not M.ring.is_unit(x) or M.ring.mul(x, x) != 1:
            return False
        seen.add(i)
    return True


def comparison_map(word: CyclicalWord, ring: GroundRing) -> ComparisonMap:
    """Build alpha (case 2) or beta (case 3) and check it is a chain isomorphism."""
    m = word.length
    ref = reference_complex(word, ring)
    D = build_summand_complex(word, ring)
    e = _sign_exponent(word)
    low_cols, high_cols = [], []
    for u in range(word.period):
        sgn = 1 if (e * u) % 2 == 0 else -1
        low = _power(cyclic_op, _word_simplex(word), u)
        high = _high_term(word, u)
        low_cols.append({D.index(m - 1, low): sgn})
        high_cols.append({D.index(m, high): sgn})
    A_low = Matrix(D.dim(m - 1), word.period, low_cols, ring)
    A_high = Matrix(D.dim(m), word.period, high_cols, ring)
    commutes = (D.differential(m) @ A_high) == (A_low @ ref.differential)
    bijective = _signed_permutation(A_low) and _signed_permutation(A_high)

    unit_image = A_low.apply({0: 1})
    norm_image = A_high.apply(norm_vector(word.period))
    low_ok = unit_image == D.vector(m - 1, generator_low(word, ring))
    if lemma_case(word) == 2:
        high_ok = norm_image == D.vector(m, generator_high(word, ring))
    else:
        high_ok = _beta_norm_check(word, ring, A_high, D)

    pred = predict(word, ring)
    homology_ok = all(
        homology_at(ref.complex, q, generators=False).module == pred.module_at(q)
        for q in range(m + 1)
    )
    return ComparisonMap(word, ring, A_low, A_high, commutes, bijective, low_ok, high_ok, homology_ok)


def _beta_norm_check(word: CyclicalWord, ring: GroundRing, A_high: Matrix, D: ChainComplex) -> bool:
    """In case 3, beta(a*N) must be the high generator for a in k[2]."""
    a = two_torsion_generator(ring)
    if a is None:
        return generator_high(word, ring, 0).is_zero()
    image = A_high.apply({u: a for u in range(word.period)})
    return image == D.vector(word.length, generator_high(word, ring, a))


def generators_check(word: CyclicalWord, ring: GroundRing) -> dict[str, bool]:
    """Do the explicit cycles generate the homology of the summand complex?"""
    D = build_summand_complex(word, ring)
    m = word.length
    out = {}
    if m == 0:
        out["low"] = generates(D, 0, D.vector(0, generator_low(word, ring)))
        return out
    out["low"] = generates(D, m - 1, D.vector(m - 1, generator_low(word, ring)))
    out["high"] = generates(D, m, D.vector(m, generator_high(word, ring)))
    return out


# -- the four-term sequence for odd periods ----------------------------------


@dataclass
class ExactnessReport:
    period: int
    ring: GroundRing
    positions: dict[str, bool]
    norm_augmentation: bool

    @property
    def exact(self) -> bool:
        return all(self.positions.values())


def _span(vectors, ncols, ring) -> RowModule:
    return RowModule([v for v in vectors if v], ncols, ring)


def norm_augmentation_identity(period: int, ring: GroundRing) -> bool:
    """epsilon o N equals multiplication by l, and l is odd."""
    eps = Matrix(1, period, [{0: 1} for _ in range(period)], ring)
    N = Matrix(period, 1, [norm_vector(period)], ring)
    return (eps @ N) == Matrix(1, 1, [{0: period}], ring) and period % 2 == 1


def verify_exact_sequence(period: int, ring: GroundRing) -> ExactnessReport:
    """Check 0 -> k[2] -N-> k[C_l] -(1+tau)-> k[C_l] -> k/2k -> 0 position by position."""
    if period < 1 or period % 2 == 0:
        raise ValueError(f"period must be odd and positive, got {period}")
    ell = period
    two_tors = [v.get(0, 0) for v in left_kernel([{0: 2}], 1, ring)]
    two_tors = [a for a in two_tors if a]
    norm_images = [{u: a for u in range(ell)} for a in two_tors]

    # injectivity of N on k[2]: every relation among the images is trivial on k[2]
    rels = left_kernel(norm_images, ell, ring) if norm_images else []
    injective = all(
        ring.normalize(sum(x * two_tors[i] for i, x in r.items())) == 0 for r in rels
    )

    M = one_plus_minus_tau(ell, 1, ring)
    kernel = left_kernel(M.columns(), ell, ring)
    at_first = _span(kernel, ell, ring).equals(_span(norm_images, ell, ring))

    # ker of the reduced augmentation: v with sum(v) in 2k
    aug_rows = [{0: 1} for _ in range(ell)] + [{0: 2}]
    ker_aug = [{u: x for u, x in r.items() if u < ell} for r in left_kernel(aug_rows, 1, ring)]
    at_second = _span(ker_aug, ell, ring).equals(_span(M.columns(), ell, ring))

    surjective = RowModule(aug_rows, 1, ring).contains({0: 1})

    positions = {
        "k[2]": injective,
        "k[C_l] (source of 1+tau)": at_first,
        "k[C_l] (target of 1+tau)": at_second,
        "k/2k": surjective,
    }
    return ExactnessReport(ell, ring, positions, norm_augmentation_identity(ell, ring))
