"""Exact linear algebra over the supported ground rings.

Vectors are sparse dicts ``{index: nonzero entry}``.  The central routine is
:func:`echelon`, which puts a list of row vectors into a canonical row form:

* over Z it is the Hermite normal form,
* over Z/n (and F_p = Z/p) it is the Howell form, so the rows whose first
  ``j`` entries vanish span every vector of the row module with that property,
* over Q it is the reduced row echelon form.

Kernels, membership tests and solving all go through that one routine.  The
Smith normal form is computed densely over Z with explicit transforms.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rings import INTEGERS, RATIONALS, GroundRing, RingElement

Vector = dict


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


# -- sparse vector helpers -------------------------------------------------


def _clean(v: Mapping[int, RingElement], n: int) -> Vector:
    if n:
        out = {}
        for k, x in v.items():
            x %= n
            if x:
                out[k] = x
        return out
    return {k: x for k, x in v.items() if x}


def _axpy(y: Vector, a: RingElement, x: Vector, n: int) -> Vector:
    """Return y + a*x."""
    out = dict(y)
    for k, xv in x.items():
        val = out.get(k, 0) + a * xv
        if n:
            val %= n
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def _scale(x: Vector, a: RingElement, n: int) -> Vector:
    if n:
        out = {}
        for k, v in x.items():
            w = (a * v) % n
            if w:
                out[k] = w
        return out
    return {k: a * v for k, v in x.items() if a * v}


def _lead(v: Vector) -> int:
    return min(v)


def _unit_to_divisor(a: int, n: int) -> int:
    """A unit u of Z/n with u*a = gcd(a, n) mod n."""
    g = math.gcd(a, n)
    nn = n // g
    u0 = pow(a // g, -1, nn) if nn > 1 else 0
    for k in range(g):
        u = u0 + k * nn
        if math.gcd(u, n) == 1:
            return u % n
    raise ArithmeticError(f"no unit normalizer for {a} mod {n}")  # pragma: no cover


def _ring_mod(ring: GroundRing) -> int:
    m = ring.modulus
    return 0 if m is None else m


# -- echelon / Howell form -------------------------------------------------


def echelon(rows: Iterable[Mapping[int, RingElement]], ring: GroundRing = INTEGERS,
            reduce_above: bool = True) -> list[Vector]:
    """Canonical row form of the module spanned by ``rows``.

    Returned rows are sorted by leading index.  Over Z leading entries are
    positive; over Z/n they are divisors of n; over Q they are 1.  With
    ``reduce_above`` the entries above each leading entry are reduced modulo
    it, which makes the form unique for a given row module.
    """
    if ring.modulus is None:
        return _echelon_field(rows, reduce_above)
    n = ring.modulus
    counter = itertools.count()
    heap: list = []
    for r in rows:
        r = _clean(r, n)
        if r:
            heapq.heappush(heap, (_lead(r), next(counter), r))
    result: list[Vector] = []
    while heap:
        c = heap[0][0]
        group = []
        while heap and heap[0][0] == c:
            group.append(heapq.heappop(heap)[2])
        # pick the row with the smallest leading entry as the initial pivot
        group.sort(key=lambda r: (abs(r[c]), len(r)))
        pivot = group[0]
        for other in group[1:]:
            a, b = pivot[c], other[c]
            if b % a == 0:
                other = _axpy(other, -(b // a), pivot, n)
            else:
                g, s, t = xgcd(a, b)
                new_pivot = _axpy(_scale(pivot, s, n), t, other, n)
                other = _axpy(_scale(other, a // g, n), -(b // g), pivot, n)
                pivot = new_pivot
            if other:
                heapq.heappush(heap, (_lead(other), next(counter), other))
        a = pivot[c]
        if n:
            u = _unit_to_divisor(a, n)
            if u != 1:
                pivot = _scale(pivot, u, n)
            g = pivot[c]
            ann = _scale(pivot, n // g, n)
            if ann:
                heapq.heappush(heap, (_lead(ann), next(counter), ann))
        elif a < 0:
            pivot = _scale(pivot, -1, 0)
        result.append(pivot)
    if reduce_above:
        for i, row in enumerate(result):
            c = _lead(row)
            g = row[c]
            for h in range(i):
                x = result[h].get(c, 0)
                if x:
                    q = x // g
                    if q:
                        result[h] = _axpy(result[h], -q, row, n)
    return result


def _echelon_field(rows: Iterable[Mapping[int, RingElement]], reduce_above: bool) -> list[Vector]:
    pivots: dict[int, Vector] = {}
    for r in rows:
        v = {k: Fraction(x) for k, x in r.items() if x}
        while v:
            c = _lead(v)
            p = pivots.get(c)
            if p is None:
                inv = 1 / v[c]
                pivots[c] = {k: x * inv for k, x in v.items()}
                break
            v = _axpy(v, -v[c], p, 0)
    order = sorted(pivots)
    result = [pivots[c] for c in order]
    if reduce_above:
        for i, row in enumerate(result):
            c = order[i]
            for h in range(i):
                x = result[h].get(c, 0)
                if x:
                    result[h] = _axpy(result[h], -x, row, 0)
    return result


class RowModule:
    """A submodule of ring^ncols given by generators, kept in echelon form.

    With ``track=True`` every echelon row remembers how it is combined from
    the original generators, which lets :meth:`solve` express a member as a
    combination of the generators.
    """

    def __init__(self, generators: Sequence[Mapping[int, RingElement]], ncols: int,
                 ring: GroundRing = INTEGERS, track: bool = False):
        self.ring = ring
        self.ncols = ncols
        self.ngens = len(generators)
        self.track = track
        n = _ring_mod(ring)
        if track:
            aug = []
            for i, g in enumerate(generators):
                row = _clean(g, n)
                row[ncols + i] = 1
                aug.append(row)
            rows = echelon(aug, ring, reduce_above=False)
            self._rows = [r for r in rows if _lead(r) < ncols]
            # rows that vanish on the first ncols entries are relations among generators
            self.relations = [{k - ncols: v for k, v in r.items()} for r in rows if _lead(r) >= ncols]
        else:
            self._rows = echelon(generators, ring, reduce_above=False)
            self.relations = None
        self._by_lead = {_lead(r): r for r in self._rows}

    @property
    def rows(self) -> list[Vector]:
        return [{k: v for k, v in r.items() if k < self.ncols} for r in self._rows]

    @property
    def rank_bound(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Mapping[int, RingElement]) -> tuple[Vector, Vector]:
        """Greedy reduction; returns (remainder, accumulated combination)."""
        ring = self.ring
        n = _ring_mod(ring)
        if ring.modulus is None:
            v = {k: Fraction(x) for k, x in v.items() if x}
        else:
            v = _clean(v, n)
        acc: Vector = {}
        while v:
            c = _lead(v)
            if c >= self.ncols:
                break
            p = self._by_lead.get(c)
            if p is None:
                break
            g = p[c]
            x = v[c]
            if ring.modulus is None:
                q = x / g
            elif x % g:
                break
            else:
                q = x // g
            v = _axpy(v, -q, p, n)
            if self.track:
                acc = _axpy(acc, q, {k: val for k, val in p.items() if k >= self.ncols}, n)
        rem = {k: x for k, x in v.items() if k < self.ncols}
        return rem, acc

    def contains(self, v: Mapping[int, RingElement]) -> bool:
        rem, _ = self._reduce(v)
        return not rem

    def solve(self, v: Mapping[int, RingElement]) -> Vector | None:
        """Coefficients x with sum_i x_i * generator_i == v, or None."""
        if not self.track:
            raise ValueError("solve needs track=True")
        rem, acc = self._reduce(v)
        if rem:
            return None
        return {k - self.ncols: x for k, x in acc.items()}

    def contains_module(self, other: "RowModule") -> bool:
        return all(self.contains(r) for r in other.rows)

    def equals(self, other: "RowModule") -> bool:
        return self.contains_module(other) and other.contains_module(self)


def left_kernel(rows: Sequence[Mapping[int, RingElement]], ncols: int,
                ring: GroundRing = INTEGERS) -> list[Vector]:
    """Generators of {x : sum_i x_i * rows[i] = 0}."""
    return RowModule(rows, ncols, ring, track=True).relations


# -- Matrix ---------------------------------------------------------------


class Matrix:
    """Sparse matrix over a ground ring, stored column by column."""

    __slots__ = ("nrows", "ncols", "ring", "_cols")

    def __init__(self, nrows: int, ncols: int, columns: Sequence[Mapping[int, RingElement]] | None = None,
                 ring: GroundRing = INTEGERS):
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        if columns is None:
            columns = [{} for _ in range(ncols)]
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        cols = []
        for col in columns:
            c = {}
            for i, x in col.items():
                if not 0 <= i < nrows:
                    raise IndexError(f"row index {i} out of range for {nrows} rows")
                x = ring.normalize(x)
                if x != 0:
                    c[i] = x
            cols.append(c)
        self._cols = cols

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[RingElement]], ring: GroundRing = INTEGERS,
                   ncols: int | None = None) -> "Matrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        cols = [{i: data[i][j] for i in range(nrows) if data[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols, ring)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Mapping[tuple[int, int], RingElement],
                     ring: GroundRing = INTEGERS) -> "Matrix":
        cols = [{} for _ in range(ncols)]
        for (i, j), x in entries.items():
            cols[j][i] = x
        return cls(nrows, ncols, cols, ring)

    @classmethod
    def identity(cls, n: int, ring: GroundRing = INTEGERS) -> "Matrix":
        return cls(n, n, [{j: 1} for j in range(n)], ring)

    @classmethod
    def zero(cls, nrows: int, ncols: int, ring: GroundRing = INTEGERS) -> "Matrix":
        return cls(nrows, ncols, None, ring)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> dict[tuple[int, int], RingElement]:
        return {(i, j): x for j, col in enumerate(self._cols) for i, x in col.items()}

    def column(self, j: int) -> Vector:
        return dict(self._cols[j])

    def columns(self) -> list[Vector]:
        return [dict(c) for c in self._cols]

    def rows(self) -> list[Vector]:
        out = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def to_dense(self) -> list[list[RingElement]]:
        zero = self.ring.normalize(0)
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.rows(), self.ring)

    def over(self, ring: GroundRing) -> "Matrix":
        return Matrix(self.nrows, self.ncols, self._cols, ring)

    def apply(self, v: Mapping[int, RingElement]) -> Vector:
        """Matrix times column vector."""
        n = _ring_mod(self.ring)
        out: Vector = {}
        for j, x in v.items():
            if x:
                out = _axpy(out, x, self._cols[j], n)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.nrows, other.ncols, [self.apply(c) for c in other._cols], self.ring)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape, self.ring, self._cols) == (other.shape, other.ring, other._cols)

    def __repr__(self) -> str:
        return f"Matrix({self.to_dense()}, ring={self.ring})"


def howell_form(M: Matrix) -> Matrix:
    """Howell form of the row module of ``M`` over Z/n, as a matrix of rows."""
    if not M.ring.is_finite:
        raise ValueError("the Howell form is defined over residue rings")
    rows = echelon(M.rows(), M.ring)
    return Matrix(len(rows), M.ncols, [{i: r[j] for i, r in enumerate(rows) if j in r}
                                       for j in range(M.ncols)], M.ring)


def hermite_form(M: Matrix) -> Matrix:
    rows = echelon(M.rows(), M.ring)
    return Matrix(len(rows), M.ncols, [{i: r[j] for i, r in enumerate(rows) if j in r}
                                       for j in range(M.ncols)], M.ring)


# -- Smith normal form over Z ---------------------------------------------


def _smith_dense(A: list[list[int]], m: int, n: int, transforms: bool = True):
    S = [list(row) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        if transforms:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        if transforms:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vinv[j], Vinv[k] = Vinv[k], Vinv[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = S[src], S[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if transforms:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in S:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            # inverse: row_src of Vinv -= q * row_dst
            vs, vd = Vinv[src], Vinv[dst]
            for j in range(n):
                if vd[j]:
                    vs[j] -= q * vd[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest remainder into the pivot position
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V, Vinv


def smith_normal_form(M: Matrix | Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with U @ M @ V == S, S diagonal with d1 | d2 | ...

    U and V are unimodular integer matrices.  The pivot is always an entry of
    least absolute value in the remaining block.
    """
    if not isinstance(M, Matrix):
        M = Matrix.from_dense(M, INTEGERS, ncols=len(M[0]) if len(M) else 0)
    if M.ring != INTEGERS:
        raise ValueError("smith_normal_form works over Z")
    m, n = M.shape
    U, S, V, _ = _smith_dense(M.to_dense(), m, n)
    return Matrix.from_dense(U, ncols=m), Matrix.from_dense(S, ncols=n), Matrix.from_dense(V, ncols=n)


def smith_with_inverse(A: list[list[int]], m: int, n: int):
    """Dense Smith form returning (U, S, V, V^-1) as lists."""
    return _smith_dense(A, m, n)


def smith_diagonal(M: Matrix) -> list[int]:
    m, n = M.shape
    _, S, _, _ = _smith_dense(M.to_dense(), m, n, transforms=False)
    return [S[i][i] for i in range(min(m, n))]


def invariant_factors(M: Matrix) -> list[int]:
    """Nonzero invariant factors of ``M`` over its ring, ascending.

    Over a field these are all 1 and their number is the rank.  Over Z/n they
    are divisors of n, with a factor n meaning a zero diagonal entry (so such
    factors are dropped).  Unit pivots are eliminated sparsely first; the
    remaining block is diagonalized densely.
    """
    ring = M.ring
    n = _ring_mod(ring)
    is_field = ring.modulus is None
    active: dict[int, Vector] = {}
    col_index: dict[int, set] = {}
    for i, row in enumerate(M.rows()):
        if row:
            if is_field:
                row = {k: Fraction(v) for k, v in row.items()}
            active[i] = row
            for c in row:
                col_index.setdefault(c, set()).add(i)
    unit_count = 0
    while True:
        best = None
        for rid, row in active.items():
            for c, x in row.items():
                if ring.is_unit(x):
                    cost = (len(row) - 1) * (len(col_index[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, rid, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, rid, c = best
        prow = active.pop(rid)
        for k in prow:
            col_index[k].discard(rid)
        inv = ring.inverse(prow[c])
        for other in list(col_index.get(c, ())):
            orow = active[other]
            q = -orow[c] * inv
            new = _axpy(orow, q, prow, n)
            for k in orow:
                if k not in new:
                    col_index[k].discard(other)
            for k in new:
                col_index.setdefault(k, set()).add(other)
            if new:
                active[other] = new
            else:
                del active[other]
        unit_count += 1
    factors = [1] * unit_count
    if active:
        if is_field:  # pragma: no cover - every nonzero entry is a unit
            raise AssertionError("field elimination left a residue")
        cols = sorted({c for row in active.values() for c in row})
        cidx = {c: k for k, c in enumerate(cols)}
        dense = []
        for row in active.values():
            r = [0] * len(cols)
            for c, x in row.items():
                r[cidx[c]] = x
            dense.append(r)
        if n:
            dense += [[n if j == i else 0 for j in range(len(cols))] for i in range(len(cols))]
        diag = smith_diagonal(Matrix.from_dense(dense, ncols=len(cols)))
        for d in diag:
            if d and (not n or d != n):
                factors.append(d if not n else math.gcd(d, n))
    return sorted(f for f in factors if f)


def rank(M: Matrix) -> int:
    """Rank over Q for Z/Q matrices, over F_p for F_p matrices."""
    if M.ring == INTEGERS:
        return len(invariant_factors(M.over(RATIONALS)))
    if not M.ring.is_field:
        raise ValueError("rank is only defined here over Z and fields")
    return len(invariant_factors(M))
