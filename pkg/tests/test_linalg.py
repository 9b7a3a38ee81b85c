import itertools
import math
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from squarezero.linalg import (
    Matrix,
    RowModule,
    echelon,
    hermite_form,
    howell_form,
    invariant_factors,
    left_kernel,
    rank,
    smith_diagonal,
    smith_normal_form,
    xgcd,
)
from squarezero.properties import DEFAULT_SEED, check_smith_form, random_integer_matrix, run_suite
from squarezero.rings import INTEGERS, RATIONALS, prime_field, residue_ring

small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def dense(M):
    return Matrix.from_dense(M, ncols=len(M[0]))


def diag(S):
    return [S.to_dense()[i][i] for i in range(min(S.shape))]


def test_smith_examples():
    _, S, _ = smith_normal_form([[2, 0], [0, 3]])
    assert diag(S) == [1, 6]
    U, S, V = smith_normal_form([[0, 0], [0, 0]])
    assert S.is_zero() and U == Matrix.identity(2) and V == Matrix.identity(2)
    _, S, _ = smith_normal_form([[1, 0], [0, 1]])
    assert S == Matrix.identity(2)


def test_smith_requires_integers():
    with pytest.raises(ValueError):
        smith_normal_form(Matrix.identity(2, RATIONALS))


@given(small_matrices)
def test_smith_postconditions_against_sympy(A):
    M = dense(A)
    U, S, V = smith_normal_form(M)
    assert U @ M @ V == S
    assert abs(sympy.Matrix(U.to_dense()).det()) == 1
    assert abs(sympy.Matrix(V.to_dense()).det()) == 1
    d = diag(S)
    nonzero = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # determinantal divisors: gcd of k-minors equals d1*...*dk
    sm = sympy.Matrix(A)
    m, n = sm.shape
    for k in range(1, len(nonzero) + 1):
        minors = [sm.extract(list(r), list(c)).det()
                  for r in itertools.combinations(range(m), k) for c in itertools.combinations(range(n), k)]
        assert math.gcd(*[int(x) for x in minors]) == math.prod(nonzero[:k])


def test_smith_suite():
    assert run_suite("snf", check_smith_form, 300, DEFAULT_SEED).passed


def test_invariant_factors_match_dense_smith():
    rng = random.Random(DEFAULT_SEED)
    for _ in range(200):
        M = dense(random_integer_matrix(rng))
        assert invariant_factors(M) == sorted(abs(d) for d in smith_diagonal(M) if d)


def _span_size(M, n):
    cols = M.columns()
    span = set()
    for coeffs in itertools.product(range(n), repeat=len(cols)):
        v = [0] * M.nrows
        for a, col in zip(coeffs, cols):
            for i, x in col.items():
                v[i] = (v[i] + a * x) % n
        span.add(tuple(v))
    return len(span)


@pytest.mark.parametrize("n", [4, 6, 8, 9])
def test_invariant_factors_over_residue_rings_by_counting(n):
    rng = random.Random(f"{DEFAULT_SEED}:{n}")
    R = residue_ring(n)
    for _ in range(40):
        A = [[rng.randrange(n) for _ in range(rng.randint(1, 3))] for _ in range(rng.randint(1, 3))]
        ncols = len(A[0])
        A = [row[:ncols] + [0] * (ncols - len(row)) for row in A]
        M = Matrix.from_dense(A, R, ncols=ncols)
        factors = invariant_factors(M)
        assert all(n % d == 0 and d < n for d in factors)
        assert _span_size(M, n) == math.prod(n // d for d in factors)


def test_howell_examples():
    Z4, Z6 = residue_ring(4), residue_ring(6)
    assert howell_form(Matrix.from_dense([[2]], Z4)).to_dense() == [[2]]
    assert howell_form(Matrix.from_dense([[2], [2]], Z4)).to_dense() == [[2]]
    assert howell_form(Matrix.from_dense([[1]], Z6)).to_dense() == [[1]]


def test_howell_form_has_annihilator_rows():
    # the row (2, 1) over Z/4 spans (0, 2) as 2*(2, 1); the Howell form must show it
    H = howell_form(Matrix.from_dense([[2, 1]], residue_ring(4), ncols=2)).to_dense()
    assert H == [[2, 1], [0, 2]]


def test_howell_form_requires_residue_ring():
    with pytest.raises(ValueError):
        howell_form(Matrix.identity(2))


@pytest.mark.parametrize("n", [4, 6, 12])
def test_howell_membership_matches_enumeration(n):
    rng = random.Random(f"howell:{n}")
    R = residue_ring(n)
    for _ in range(30):
        rows = [{j: rng.randrange(n) for j in range(3)} for _ in range(rng.randint(1, 3))]
        mod = RowModule(rows, 3, R)
        span = set()
        for coeffs in itertools.product(range(n), repeat=len(rows)):
            span.add(tuple(sum(a * r.get(j, 0) for a, r in zip(coeffs, rows)) % n for j in range(3)))
        for v in itertools.product(range(n), repeat=3):
            assert mod.contains({j: x for j, x in enumerate(v) if x}) == (v in span)


def test_hermite_form_over_integers():
    H = hermite_form(Matrix.from_dense([[2, 4], [3, 5]], ncols=2)).to_dense()
    assert H == [[1, 1], [0, 2]]


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g == math.gcd(a, b) and s * a + t * b == g


@pytest.mark.parametrize("ring", [INTEGERS, RATIONALS, prime_field(3), residue_ring(4), residue_ring(6)], ids=str)
def test_left_kernel(ring):
    rng = random.Random(f"kernel:{ring}")
    for _ in range(50):
        rows = [{j: rng.randint(-3, 3) for j in range(3)} for _ in range(rng.randint(1, 4))]
        rows = [{j: ring.normalize(x) for j, x in r.items() if ring.normalize(x) != 0} for r in rows]
        for k in left_kernel(rows, 3, ring):
            combo = [ring.normalize(sum(c * rows[i].get(j, 0) for i, c in k.items())) for j in range(3)]
            assert combo == [0, 0, 0]


def test_left_kernel_is_complete_over_integers():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {0: 3, 1: 6}]
    K = left_kernel(rows, 2, INTEGERS)
    assert len(K) == 2
    assert RowModule(K, 3, INTEGERS).contains({0: 2, 1: -1})


@given(small_matrices)
def test_rank_matches_sympy(A):
    assert rank(dense(A)) == sympy.Matrix(A).rank()


def test_rank_over_prime_field():
    M = Matrix.from_dense([[1, 1], [1, 1]], prime_field(2))
    assert rank(M) == 1
    assert rank(Matrix.from_dense([[2, 0], [0, 2]], prime_field(2))) == 0


def test_echelon_is_canonical():
    a = echelon([{0: 2, 1: 4}, {0: 3, 1: 5}], INTEGERS)
    b = echelon([{0: 3, 1: 5}, {0: 5, 1: 9}], INTEGERS)
    assert a == b


def test_matrix_basics():
    M = Matrix.from_dense([[1, 2, 0], [0, 0, 3]], ncols=3)
    assert M.shape == (2, 3)
    assert M.transpose().to_dense() == [[1, 0], [2, 0], [0, 3]]
    assert M.apply({0: 1, 2: 1}) == {0: 1, 1: 3}
    assert (Matrix.identity(2) @ M) == M
    assert Matrix.from_dense([[5]], residue_ring(4)).to_dense() == [[1]]
    assert Matrix.zero(2, 2).is_zero()
