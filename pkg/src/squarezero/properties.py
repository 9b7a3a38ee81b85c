"""Seeded randomized checks of the algebraic identities the library relies on.

Each ``check_*`` function takes a ``random.Random`` and returns True when the
identity holds for the sampled case.  :func:`run_suite` repeats a check and
counts failures; the acceptance tests and the CLI both use it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import ONE, Chain, _face, boundary, cyclic_op, degeneracy, summand_of
from .homology import ChainComplex, homology, universal_coefficient_dims
from .linalg import Matrix, smith_normal_form
from .rings import INTEGERS, GroundRing, prime_field
from .summands import build_summand_complex, decompose_chain, project
from .symbols import shuffle
from .words import enumerate_necklaces

DEFAULT_SEED = 20240531


def random_simplex(rng: random.Random, r: int, n: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, r) for _ in range(n + 1))


def random_chain(rng: random.Random, r: int, n: int, ring: GroundRing = INTEGERS, terms: int = 4) -> Chain:
    return Chain([(random_simplex(rng, r, n), rng.randint(-3, 3)) for _ in range(terms)], n, ring)


def _d(s, i):
    return None if s is None else _face(s, i)


def _s(s, i):
    return None if s is None else degeneracy(s, i)


def _t(s):
    return None if s is None else cyclic_op(s)


def check_simplicial_identities(rng: random.Random, r: int = 3, max_degree: int = 6) -> bool:
    n = rng.randint(2, max_degree)
    x = random_simplex(rng, r, n)
    for j in range(n + 1):
        for i in range(j):
            if _d(_d(x, j), i) != _d(_d(x, i), j - 1):
                return False
    for j in range(n + 1):
        for i in range(j + 1):
            if _s(_s(x, j), i) != _s(_s(x, i), j + 1):
                return False
    for j in range(n + 1):
        sj = degeneracy(x, j)
        for i in range(n + 2):
            lhs = _d(sj, i)
            if i < j:
                rhs = _s(_d(x, i), j - 1)
            elif i in (j, j + 1):
                rhs = x
            else:
                rhs = _s(_d(x, i - 1), j)
            if lhs != rhs:
                return False
    return True


def check_cyclic_identities(rng: random.Random, r: int = 3, max_degree: int = 6) -> bool:
    n = rng.randint(1, max_degree)
    x = random_simplex(rng, r, n)
    y = x
    for _ in range(n + 1):
        y = cyclic_op(y)
    if y != x:
        return False
    tx = cyclic_op(x)
    if _d(tx, 0) != _d(x, n):
        return False
    for i in range(1, n + 1):
        if _d(tx, i) != _t(_d(x, i - 1)):
            return False
        if degeneracy(tx, i) != cyclic_op(degeneracy(x, i - 1)):
            return False
    if degeneracy(tx, 0) != cyclic_op(cyclic_op(degeneracy(x, n))):
        return False
    return True


def check_boundary_squared(rng: random.Random, r: int = 3, max_degree: int = 6,
                           ring: GroundRing = INTEGERS) -> bool:
    n = rng.randint(2, max_degree)
    c = random_chain(rng, r, n, ring)
    return boundary(boundary(c)).is_zero()


def check_summand_preserved(rng: random.Random, r: int = 3, max_degree: int = 6) -> bool:
    n = rng.randint(1, max_degree)
    x = random_simplex(rng, r, n)
    w = summand_of(x)
    for i in range(n + 1):
        f = _face(x, i)
        if f is not None and summand_of(f) != w:
            return False
        if summand_of(degeneracy(x, i)) != w:
            return False
    if summand_of(cyclic_op(x)) != w:
        return False
    c = random_chain(rng, r, n)
    bc = boundary(c)
    for word, part in decompose_chain(c).items():
        if boundary(part) != project(bc, word):
            return False
    return True


def check_shuffle_commutative(rng: random.Random, r: int = 3) -> bool:
    p, q = rng.randint(0, 3), rng.randint(0, 3)
    u = random_chain(rng, r, p, terms=2)
    v = random_chain(rng, r, q, terms=2)
    lhs = shuffle(u, v)
    rhs = shuffle(v, u)
    return lhs == (rhs if (p * q) % 2 == 0 else -rhs)


def check_shuffle_associative(rng: random.Random, r: int = 3) -> bool:
    a, b, c = (random_chain(rng, r, rng.randint(0, 2), terms=2) for _ in range(3))
    return shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


def check_shuffle_leibniz(rng: random.Random, r: int = 3) -> bool:
    """b(u*v) = b(u)*v + (-1)^p u*b(v), for chains of positive degree."""
    p, q = rng.randint(1, 3), rng.randint(1, 3)
    u = random_chain(rng, r, p, terms=2)
    v = random_chain(rng, r, q, terms=2)
    lhs = boundary(shuffle(u, v))
    rhs = shuffle(boundary(u), v)
    second = shuffle(u, boundary(v))
    rhs = rhs + (second if p % 2 == 0 else -second)
    return lhs == rhs


def bareiss_determinant(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def random_integer_matrix(rng: random.Random, max_dim: int = 6, bound: int = 9) -> list[list[int]]:
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    density = rng.random()
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(m)]


def check_smith_form(rng: random.Random) -> bool:
    A = random_integer_matrix(rng)
    M = Matrix.from_dense(A, ncols=len(A[0]))
    U, S, V = smith_normal_form(M)
    if (U @ M @ V) != S:
        return False
    dense = S.to_dense()
    for i, row in enumerate(dense):
        for j, x in enumerate(row):
            if i != j and x:
                return False
    diag = [dense[i][i] for i in range(min(S.shape))]
    if any(d < 0 for d in diag):
        return False
    nonzero = [d for d in diag if d]
    if diag[: len(nonzero)] != nonzero:
        return False
    if any(b % a for a, b in zip(nonzero, nonzero[1:])):
        return False
    return abs(bareiss_determinant(U.to_dense())) == 1 and abs(bareiss_determinant(V.to_dense())) == 1


def check_universal_coefficients(rng: random.Random, primes=(2, 3), r: int = 3, max_m: int = 5,
                                 unnormalized: bool = False) -> bool:
    """Mod-p homology of a random summand complex against its integral invariant factors."""
    from .summands import build_unnormalized_summand_complex

    m = rng.randint(1, max_m)
    word = rng.choice(enumerate_necklaces(r, m))
    if unnormalized:
        C = build_unnormalized_summand_complex(word, INTEGERS, m + 2)
    else:
        C = build_summand_complex(word, INTEGERS)
    integral = homology(C)
    for p in primes:
        Cp = C.restrict(prime_field(p))
        dims = [h.free_rank for h in homology(Cp)]
        if dims != universal_coefficient_dims(integral, p):
            return False
    return True


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def run_suite(name: str, check, cases: int, seed: int = DEFAULT_SEED, **kwargs) -> SuiteResult:
    rng = random.Random(f"{seed}:{name}")
    failures = sum(0 if check(rng, **kwargs) else 1 for _ in range(cases))
    return SuiteResult(name, cases, failures)


IDENTITY_SUITES = {
    "simplicial identities": check_simplicial_identities,
    "cyclic identities": check_cyclic_identities,
    "b o b = 0": check_boundary_squared,
    "summand decomposition preserved": check_summand_preserved,
    "shuffle graded commutativity": check_shuffle_commutative,
    "shuffle associativity": check_shuffle_associative,
    "shuffle Leibniz rule": check_shuffle_leibniz,
    "Smith normal form postconditions": check_smith_form,
}


def unit_chain(ring: GroundRing = INTEGERS) -> Chain:
    return Chain({(ONE,): 1}, 0, ring)


def complex_is_valid(C: ChainComplex) -> bool:
    return all((C.differential(q - 1) @ C.differential(q)).is_zero() for q in range(2, C.top + 1))
