"""Exact Hochschild homology of the square-zero algebra k[x1..xr]/(xi xj).

The complex splits along necklaces of generators; each summand is computed
from a two-term normalized complex and compared with a closed form, and the
whole unnormalized complex serves as a brute-force oracle in low degrees.
"""

from .algebra import Chain, boundary, cyclic_op, degeneracy, face
from .closed_form import comparison_map, generator_high, generator_low, predict, verify_exact_sequence
from .homology import ChainComplex, HomologyDescriptor, homology, homology_at
from .rings import INTEGERS, RATIONALS, GroundRing, ModuleDescriptor, prime_field, residue_ring
from .summands import aggregate_homology, build_full_complex, build_summand_complex, summand_homology
from .symbols import shuffle, symbol_cycle, verify_nontriviality
from .words import CyclicalWord, canonicalize, enumerate_necklaces

__version__ = "0.1.0"

__all__ = [
    "Chain", "ChainComplex", "CyclicalWord", "GroundRing", "HomologyDescriptor", "INTEGERS",
    "ModuleDescriptor", "RATIONALS", "aggregate_homology", "boundary", "build_full_complex",
    "build_summand_complex", "canonicalize", "comparison_map", "cyclic_op", "degeneracy",
    "enumerate_necklaces", "face", "generator_high", "generator_low", "homology", "homology_at",
    "predict", "prime_field", "residue_ring", "shuffle", "summand_homology", "symbol_cycle",
    "verify_exact_sequence", "verify_nontriviality", "__version__",
]
