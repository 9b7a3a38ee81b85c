import random

import pytest

from squarezero.algebra import Chain, boundary, parse_simplex
from squarezero.homology import homology, homology_at
from squarezero.linalg import Matrix
from squarezero.properties import random_chain
from squarezero.rings import INTEGERS, RATIONALS, ModuleDescriptor, prime_field, residue_ring
from squarezero.summands import (
    BudgetExceeded,
    aggregate_homology,
    build_full_complex,
    build_summand_complex,
    build_unnormalized_summand_complex,
    decompose_chain,
    project,
    summand_basis,
    summand_homology,
    unnormalized_summand_basis,
)
from squarezero.words import EMPTY_WORD, canonicalize, enumerate_necklaces

RINGS = [INTEGERS, RATIONALS, prime_field(2), prime_field(3), prime_field(5), residue_ring(4), residue_ring(6)]


def S(text):
    return parse_simplex(text)


def W(*letters):
    return canonicalize(letters)


def test_summand_basis_examples():
    assert summand_basis(W(1, 2), 1) == [S("x1⊗x2"), S("x2⊗x1")]
    assert summand_basis(W(1, 1), 2) == [S("1⊗x1⊗x1")]
    assert summand_basis(W(1, 2), 3) == []
    assert summand_basis(EMPTY_WORD, 0) == [S("1")]


def test_summand_complex_examples():
    assert build_summand_complex(W(1), INTEGERS).differential(1) == Matrix.from_dense([[0]])
    assert build_summand_complex(W(1, 1), INTEGERS).differential(2) == Matrix.from_dense([[2]])
    # b(1(x)x1(x)x2) = x1(x)x2 + x2(x)x1, and symmetrically for the other rotation
    d = build_summand_complex(W(1, 2), INTEGERS).differential(2)
    assert d.to_dense() == [[1, 1], [1, 1]]


def test_full_complex_examples():
    C = build_full_complex(1, RATIONALS, 2)
    assert C.dims() == [2, 4, 8, 16]
    assert homology_at(C, 0, generators=False).free_rank == 2
    assert homology_at(build_full_complex(2, RATIONALS, 1), 0, generators=False).free_rank == 3


def test_full_complex_budget():
    with pytest.raises(BudgetExceeded) as info:
        build_full_complex(3, INTEGERS, 6)
    assert info.value.degree == 7 and info.value.budget == 20_000
    with pytest.raises(BudgetExceeded):
        build_unnormalized_summand_complex(W(1, 2), INTEGERS, 6, budget=10)


def test_decompose_examples():
    c = Chain({S("1⊗x1"): 1, S("x1⊗x1"): 1}, 1)
    parts = decompose_chain(c)
    assert parts == {W(1): Chain.of(S("1⊗x1")), W(1, 1): Chain.of(S("x1⊗x1"))}
    assert decompose_chain(Chain.zero(2)) == {}
    c = Chain({S("1⊗x1⊗x2"): 1, S("1⊗x2⊗x1"): -1}, 2)
    assert list(decompose_chain(c)) == [W(1, 2)]


def test_projection_commutes_with_boundary():
    rng = random.Random(11)
    for _ in range(300):
        c = random_chain(rng, 3, rng.randint(1, 5))
        bc = boundary(c)
        for w, part in decompose_chain(c).items():
            assert boundary(part) == project(bc, w)
        # the parts add back up to the chain
        total = Chain.zero(c.degree)
        for part in decompose_chain(c).values():
            total = total + part
        assert total == c


def test_aggregate_examples():
    assert aggregate_homology(1, RATIONALS, 0).free_rank == 2
    assert aggregate_homology(2, RATIONALS, 2).free_rank == 5
    assert aggregate_homology(2, prime_field(2), 2).free_rank == 7


def test_aggregate_over_integers_frozen():
    got = [aggregate_homology(1, INTEGERS, q).module for q in range(5)]
    assert got == [ModuleDescriptor(2), ModuleDescriptor(1, (2,)), ModuleDescriptor(1),
                   ModuleDescriptor(1, (2,)), ModuleDescriptor(1)]
    assert aggregate_homology(2, INTEGERS, 1).module == ModuleDescriptor(3, (2, 2))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_normalized_equals_unnormalized(ring):
    for m in range(6):
        for word in enumerate_necklaces(3, m):
            U = build_unnormalized_summand_complex(word, ring, m + 2)
            D = build_summand_complex(word, ring, m + 2)
            assert [h.module for h in homology(U)] == [h.module for h in homology(D)], word


def test_unnormalized_basis_counts():
    # l * C(n+1, m) simplices: place a rotation in m of the n+1 slots
    assert len(unnormalized_summand_basis(W(1, 2), 3)) == 2 * 6
    assert len(unnormalized_summand_basis(W(1, 1), 3)) == 6
    assert unnormalized_summand_basis(EMPTY_WORD, 2) == [S("1⊗1⊗1")]


@pytest.mark.parametrize("ring", [INTEGERS, RATIONALS, prime_field(2), residue_ring(6)], ids=str)
@pytest.mark.parametrize("r", [1, 2])
def test_aggregate_equals_full_complex(ring, r):
    C = build_full_complex(r, ring, 4)
    for q in range(5):
        assert homology_at(C, q, generators=False).module == aggregate_homology(r, ring, q).module


def test_no_stray_homology():
    # summands of length > q+1 are zero in degree q
    for ring in (INTEGERS, prime_field(2), residue_ring(4)):
        for q in range(4):
            for m in range(q + 2, q + 4):
                for w in enumerate_necklaces(2, m):
                    D = build_summand_complex(w, ring, top=max(q + 1, m + 1))
                    assert homology_at(D, q, generators=False).module.is_zero
                    assert summand_homology(w, ring, q).module.is_zero
