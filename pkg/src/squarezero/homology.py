"""Chain complexes with explicit bases and their homology.

Differentials use the column convention: ``differential(q)`` is the matrix of
d_q : C_q -> C_{q-1}, with ``dim C_{q-1}`` rows and ``dim C_q`` columns, so
column j holds the boundary of the j-th basis element of C_q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .algebra import Chain
from .linalg import Matrix, RowModule, Vector, echelon, invariant_factors, rank, smith_with_inverse
from .rings import INTEGERS, RATIONALS, GroundRing, ModuleDescriptor, RingElement, cyclic_sum


class ComplexError(ValueError):
    pass


class ChainComplex:
    """A bounded chain complex of free modules C_0, ..., C_top.

    ``bases[q]`` lists hashable labels for the basis of C_q (simplices for the
    Hochschild complexes).  ``differentials[q]`` for 1 <= q <= top gives d_q;
    missing entries are zero maps.
    """

    def __init__(self, ring: GroundRing, bases: Sequence[Sequence[Hashable]],
                 differentials: Mapping[int, Matrix], check: bool = True):
        self.ring = ring
        self.bases = [list(b) for b in bases]
        self.top = len(self.bases) - 1
        self._index = [{lab: k for k, lab in enumerate(b)} for b in self.bases]
        self._d: dict[int, Matrix] = {}
        for q in range(1, self.top + 1):
            shape = (len(self.bases[q - 1]), len(self.bases[q]))
            d = differentials.get(q)
            if d is None:
                d = Matrix.zero(*shape, ring)
            elif d.shape != shape:
                raise ComplexError(f"d_{q} has shape {d.shape}, expected {shape}")
            elif d.ring != ring:
                d = d.over(ring)
            self._d[q] = d
        self._boundary_modules: dict[int, RowModule] = {}
        if check:
            for q in range(2, self.top + 1):
                if not (self._d[q - 1] @ self._d[q]).is_zero():
                    raise ComplexError(f"d_{q - 1} d_{q} != 0")

    def dim(self, q: int) -> int:
        if 0 <= q <= self.top:
            return len(self.bases[q])
        return 0

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def differential(self, q: int) -> Matrix:
        if q == 0:
            return Matrix.zero(0, self.dim(0), self.ring)
        if not 1 <= q <= self.top:
            raise ComplexError(f"differential d_{q} not available (top degree {self.top})")
        return self._d[q]

    def index(self, q: int, label: Hashable) -> int:
        return self._index[q][label]

    def vector(self, q: int, chain: Chain | Mapping) -> Vector:
        """Coordinates of a chain (or ``{label: coefficient}``) in the degree-q basis."""
        items = chain.terms.items() if isinstance(chain, Chain) else chain.items()
        out: Vector = {}
        for lab, c in items:
            if lab not in self._index[q]:
                raise ComplexError(f"{lab!r} is not a basis element in degree {q}")
            c = self.ring.normalize(c)
            if c != 0:
                out[self._index[q][lab]] = c
        return out

    def chain(self, q: int, v: Mapping[int, RingElement] | Sequence[RingElement]) -> Chain:
        """Turn coordinates back into a chain; labels must be simplices."""
        v = _as_vector(v)
        return Chain({self.bases[q][k]: c for k, c in v.items()}, q, self.ring)

    def boundary_module(self, q: int) -> RowModule:
        """Image of d_{q+1} in C_q."""
        if q not in self._boundary_modules:
            cols = self.differential(q + 1).columns() if q + 1 <= self.top else []
            if q + 1 > self.top:
                raise ComplexError(f"need d_{q + 1} to form boundaries in degree {q}")
            self._boundary_modules[q] = RowModule(cols, self.dim(q), self.ring)
        return self._boundary_modules[q]

    def restrict(self, ring: GroundRing) -> "ChainComplex":
        """The same integer complex read over another ring."""
        return ChainComplex(ring, self.bases, {q: d.over(ring) for q, d in self._d.items()}, check=False)


def _as_vector(v) -> Vector:
    if isinstance(v, Mapping):
        return {k: x for k, x in v.items() if x}
    return {k: x for k, x in enumerate(v) if x}


@dataclass(frozen=True)
class HomologyGenerator:
    """A representative cycle of one cyclic summand; order 0 means free over Z."""

    order: int
    cycle: Vector


@dataclass(frozen=True)
class HomologyDescriptor:
    module: ModuleDescriptor
    degree: int
    generators: tuple[HomologyGenerator, ...] | None = field(default=None, compare=False)

    @property
    def free_rank(self) -> int:
        return self.module.free_rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.module.torsion


def is_cycle(C: ChainComplex, q: int, z) -> bool:
    z = _check_dim(C, q, z)
    if q == 0:
        return True
    return not C.differential(q).apply(z)


def is_boundary(C: ChainComplex, q: int, z) -> bool:
    z = _check_dim(C, q, z)
    return C.boundary_module(q).contains(z)


def classes_equal(C: ChainComplex, q: int, z1, z2) -> bool:
    """Whether z1 - z2 lies in the image of d_{q+1}."""
    z1 = _check_dim(C, q, z1)
    z2 = _check_dim(C, q, z2)
    diff = dict(z1)
    for k, x in z2.items():
        diff[k] = C.ring.sub(diff.get(k, C.ring.normalize(0)), x)
    return C.boundary_module(q).contains({k: x for k, x in diff.items() if x})


def _check_dim(C: ChainComplex, q: int, z) -> Vector:
    if isinstance(z, Chain):
        return C.vector(q, z)
    if not isinstance(z, Mapping) and len(z) != C.dim(q):
        raise ComplexError(f"vector of length {len(z)} in degree {q} of dimension {C.dim(q)}")
    v = _as_vector(z)
    if any(not 0 <= k < C.dim(q) for k in v):
        raise ComplexError(f"coordinate out of range for degree {q}")
    return {k: C.ring.normalize(x) for k, x in v.items()}


def cycle_module_generators(C: ChainComplex, q: int) -> list[Vector]:
    """Generators of ker d_q (as coordinate vectors in C_q)."""
    n = C.dim(q)
    if q == 0:
        return [{k: 1} for k in range(n)]
    # column j of d_q is the image of basis vector j, so ker d_q is the left
    # kernel of the list of columns
    return RowModule(C.differential(q).columns(), C.dim(q - 1), C.ring, track=True).relations


def homology_at(C: ChainComplex, q: int, generators: bool = True) -> HomologyDescriptor:
    """H_q = ker d_q / im d_{q+1} in invariant-factor form.

    Over Z the quotient is diagonalized by a Smith normal form, over Z/n the
    cycle and boundary modules come from Howell forms, over fields from row
    reduction.  With ``generators`` a representative cycle is produced for each
    cyclic summand and checked to be a cycle that is not a boundary.
    """
    if not 0 <= q or q + 1 > C.top:
        raise ComplexError(f"H_{q} needs d_{q} and d_{q + 1}; complex stops at degree {C.top}")
    ring = C.ring
    if not generators and ring.kind != "residue":
        return _homology_by_rank(C, q)

    K = cycle_module_generators(C, q)
    K = echelon(K, ring, reduce_above=True) if K else []
    k = len(K)
    B = C.differential(q + 1).columns()
    if k == 0:
        return HomologyDescriptor(ModuleDescriptor(), q, () if generators else None)
    # relations: coefficient vectors v with sum v_i K_i in the boundary module
    rel = RowModule(K + B, C.dim(q), ring, track=True).relations
    rel = [{i: x for i, x in r.items() if i < k} for r in rel]
    rel = [r for r in rel if r]

    if ring.is_field and ring.modulus is None:
        orders, gens = _quotient_over_field(rel, k)
    else:
        orders, gens = _quotient_over_z(rel, k, ring.modulus)

    cycles = []
    module = cyclic_sum(orders, ring)
    n = ring.modulus or 0
    for order, g in zip(orders, gens):
        o = ring.cyclic_quotient_order(order)
        if o == 1:
            continue
        z: Vector = {}
        for i, c in g.items():
            for j, x in K[i].items():
                z[j] = z.get(j, 0) + c * x
        z = {j: (x % n if n else x) for j, x in z.items()}
        z = {j: x for j, x in z.items() if x}
        cycles.append(HomologyGenerator(o, z))
    desc = HomologyDescriptor(module, q, tuple(cycles) if generators else None)
    if generators:
        _verify_generators(C, q, desc)
    return desc


def _quotient_over_field(rel: list[Vector], k: int):
    rows = echelon(rel, RATIONALS, reduce_above=True) if rel else []
    pivots = {min(r) for r in rows}
    orders, gens = [], []
    for j in range(k):
        if j not in pivots:
            orders.append(0)
            gens.append({j: 1})
    return orders, gens


def _quotient_over_z(rel: list[Vector], k: int, n: int):
    """Diagonalize Z^k / (relations + n Z^k) by a Smith normal form."""
    ring = INTEGERS
    rows = echelon(rel, ring) if rel else []
    dense = [[r.get(j, 0) for j in range(k)] for r in rows]
    if n:
        dense += [[n if i == j else 0 for j in range(k)] for i in range(k)]
    m = len(dense)
    if m == 0:
        return [0] * k, [{i: 1} for i in range(k)]
    _, S, _, Vinv = smith_with_inverse(dense, m, k)
    orders = []
    gens = []
    for i in range(k):
        d = S[i][i] if i < m else 0
        orders.append(abs(d))
        gens.append({j: x for j, x in enumerate(Vinv[i]) if x})
    return orders, gens


def _homology_by_rank(C: ChainComplex, q: int) -> HomologyDescriptor:
    dq = C.differential(q)
    dq1 = C.differential(q + 1)
    r_out = rank(dq) if q > 0 else 0
    if C.ring == INTEGERS:
        facs = invariant_factors(dq1)
        r_in = len(facs)
        torsion = [d for d in facs if d > 1]
    else:
        r_in = rank(dq1)
        torsion = []
    free = C.dim(q) - r_out - r_in
    return HomologyDescriptor(cyclic_sum([0] * free + torsion, C.ring), q, None)


def _verify_generators(C: ChainComplex, q: int, desc: HomologyDescriptor):
    ring = C.ring
    for g in desc.generators:
        if not is_cycle(C, q, g.cycle):
            raise AssertionError(f"generator {g} is not a cycle")
        if is_boundary(C, q, g.cycle):
            raise AssertionError(f"generator {g} is a boundary")
        if g.order:
            multiple = {j: ring.mul(ring.normalize(g.order), x) for j, x in g.cycle.items()}
            if not is_boundary(C, q, {j: x for j, x in multiple.items() if x}):
                raise AssertionError(f"generator {g} does not have order {g.order}")


def homology(C: ChainComplex, generators: bool = False) -> list[HomologyDescriptor]:
    """H_q for every q < top."""
    return [homology_at(C, q, generators) for q in range(C.top)]


def generates(C: ChainComplex, q: int, h, desc: HomologyDescriptor | None = None) -> bool:
    """Whether the class of the cycle ``h`` generates H_q (which must be cyclic or zero)."""
    h = _check_dim(C, q, h)
    if not is_cycle(C, q, h):
        return False
    if desc is None or desc.generators is None:
        desc = homology_at(C, q, generators=True)
    cols = C.differential(q + 1).columns() + [h]
    span = RowModule(cols, C.dim(q), C.ring)
    return all(span.contains(g.cycle) for g in desc.generators)


def class_coordinates(C: ChainComplex, q: int, z, desc: HomologyDescriptor) -> list[RingElement]:
    """Coordinates of the class of ``z`` against the generators of ``desc``.

    Each coordinate is reduced modulo the order of its generator.
    """
    z = _check_dim(C, q, z)
    if not is_cycle(C, q, z):
        raise ComplexError("not a cycle")
    gens = list(desc.generators)
    cols = [g.cycle for g in gens] + C.differential(q + 1).columns()
    sol = RowModule(cols, C.dim(q), C.ring, track=True).solve(z)
    if sol is None:  # pragma: no cover - generators span the cycles modulo boundaries
        raise AssertionError("cycle not in span of homology generators")
    out = []
    for i, g in enumerate(gens):
        x = sol.get(i, 0)
        if C.ring.modulus is None:
            out.append(x)
        else:
            o = g.order if g.order else (C.ring.modulus or 0)
            out.append(x % o if o else x)
    return out


def universal_coefficient_dims(integral: Sequence[HomologyDescriptor], p: int) -> list[int]:
    """dim H_q(C (x) F_p) predicted from the integral homology of C."""
    out = []
    for q, h in enumerate(integral):
        here = h.free_rank + sum(1 for d in h.torsion if d % p == 0)
        tor = sum(1 for d in integral[q - 1].torsion if d % p == 0) if q > 0 else 0
        out.append(here + tor)
    return out
