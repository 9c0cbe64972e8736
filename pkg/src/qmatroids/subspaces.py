"""Exact linear algebra over GF(q) and the subspace lattice of F_q^n.

Vectors over GF(q) are tuples of element indices; a vector is also
addressable by its integer encoding sum(v_i * q**i) (little-endian base-q
digits).  Subspaces are canonical: the stored basis is the unique RREF,
so equal subspaces compare and hash equal.

For q = 2 the row operations are dispatched to the packed kernels in
:mod:`qmatroids.kernels`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Iterator, Optional, Sequence

from . import kernels
from .errors import AmbientMismatch, EnumerationCapExceeded
from .fields import FieldSpec, ground_field

DEFAULT_MAX_VECTORS = 1 << 16
DEFAULT_MAX_SUBSPACES = 10 ** 7


@dataclass(frozen=True)
class Caps:
    """Enumeration guard rails."""
    max_vectors: int = DEFAULT_MAX_VECTORS
    max_subspaces: int = DEFAULT_MAX_SUBSPACES


DEFAULT_CAPS = Caps()


# ---------------------------------------------------------------------------
# vector encoding

def encode_vector(vec: Sequence[int], q: int) -> int:
    code = 0
    for v in reversed(vec):
        code = code * q + v
    return code


def decode_vector(code: int, q: int, n: int):
    out = []
    for _ in range(n):
        out.append(code % q)
        code //= q
    return tuple(out)


def vec_add(u, v, F: FieldSpec):
    return tuple(F.base_add(a, b) for a, b in zip(u, v))


def vec_scale(c, v, F: FieldSpec):
    return tuple(F.base_mul(c, x) for x in v)


# ---------------------------------------------------------------------------
# matrices over an arbitrary FieldSpec (used for representing matrices G)

class Mat:
    """Dense matrix over a FieldSpec; entries are element indices."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries: Sequence[int]):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in row)
        return cls(spec, r, c, flat)

    def row(self, i: int):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def iter_rows(self):
        for i in range(self.rows):
            yield self.row(i)

    def transpose(self) -> "Mat":
        e = [self.entries[r * self.cols + c]
             for c in range(self.cols) for r in range(self.rows)]
        return Mat(self.spec, self.cols, self.rows, e)

    def mul(self, other: "Mat") -> "Mat":
        if self.spec != other.spec:
            raise AmbientMismatch("matrix fields differ")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.spec
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = F.add(acc, F.mul(a, b))
                out.append(acc)
        return Mat(self.spec, self.rows, other.cols, out)

    def rank(self) -> int:
        F = self.spec
        mat = [list(r) for r in self.iter_rows()]
        rank = 0
        for c in range(self.cols):
            piv = None
            for i in range(rank, len(mat)):
                if mat[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            mat[rank], mat[piv] = mat[piv], mat[rank]
            inv = F.inv(mat[rank][c])
            for i in range(rank + 1, len(mat)):
                f = mat[i][c]
                if f:
                    factor = F.mul(f, inv)
                    mat[i] = [F.sub(x, F.mul(factor, y))
                              for x, y in zip(mat[i], mat[rank])]
            rank += 1
            if rank == len(mat):
                break
        return rank

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.spec == other.spec
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over GF({self.spec.q}^{self.spec.m}))"


# ---------------------------------------------------------------------------
# RREF over the ground field

def rref(rows: Sequence[Sequence[int]], q: int, n: int):
    """Unique RREF of the given rows; returns (rows, rank), no zero rows."""
    if q == 2:
        packed = [_pack(r) for r in rows]
        red, rank = kernels.gf2_rref(packed, n)
        return tuple(_unpack(r, n) for r in red), rank
    F = ground_field(q)
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.base_inv(mat[r][c])
        if inv != 1:
            mat[r] = [F.base_mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.base_add(x, F.base_neg(F.base_mul(f, y)))
                          for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), r


def _pack(row) -> int:
    bits = 0
    for i, v in enumerate(row):
        if v:
            bits |= 1 << i
    return bits


def _unpack(bits: int, n: int):
    return tuple((bits >> i) & 1 for i in range(n))


# ---------------------------------------------------------------------------
# canonical subspaces

class Subspace:
    """A subspace of F_q^n, stored as its unique RREF basis (no zero rows)."""

    __slots__ = ("q", "n", "basis", "_hash")

    def __init__(self, q: int, n: int, basis):
        self.q = q
        self.n = n
        self.basis = basis
        self._hash = hash((q, n, basis))

    @classmethod
    def from_rows(cls, q: int, n: int, rows: Iterable[Sequence[int]]) -> "Subspace":
        basis, _ = rref(list(rows), q, n)
        return cls(q, n, basis)

    @classmethod
    def zero(cls, q: int, n: int) -> "Subspace":
        return cls(q, n, ())

    @classmethod
    def full(cls, q: int, n: int) -> "Subspace":
        eye = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        return cls(q, n, eye)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def ambient(self):
        return (self.q, self.n)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        F = ground_field(self.q)
        v = list(vec)
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            c = v[p]
            if c:
                for j in range(self.n):
                    v[j] = F.base_add(v[j], F.base_neg(F.base_mul(c, row[j])))
        return not any(v)

    def vectors(self) -> Iterator[tuple]:
        """All q^dim vectors, in coefficient-lexicographic order."""
        F = ground_field(self.q)
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            v = (0,) * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_add(v, vec_scale(c, row, F), F)
            yield v

    def coordinates_of(self, vec: Sequence[int]):
        """Coefficients of vec in this basis; None if vec lies outside."""
        F = ground_field(self.q)
        v = list(vec)
        coeffs = []
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            c = v[p]
            coeffs.append(c)
            if c:
                for j in range(self.n):
                    v[j] = F.base_add(v[j], F.base_neg(F.base_mul(c, row[j])))
        if any(v):
            return None
        return tuple(coeffs)

    def to_dict(self):
        return {"ambient_n": self.n, "q": self.q,
                "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_dict(cls, d) -> "Subspace":
        return cls.from_rows(d["q"], d["ambient_n"], d["basis"])

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and (self.q, self.n, self.basis) == (other.q, other.n, other.basis))

    def __hash__(self):
        return self._hash

    def __le__(self, other: "Subspace"):
        return contains(other, self)

    def __lt__(self, other: "Subspace"):
        return self != other and contains(other, self)

    def __repr__(self):
        rows = ",".join("".join(str(x) for x in row) for row in self.basis)
        return f"<{rows or '0'}|F{self.q}^{self.n}>"


def _check_same_ambient(U: Subspace, V: Subspace):
    if (U.q, U.n) != (V.q, V.n):
        raise AmbientMismatch(f"ambients differ: {U.ambient()} vs {V.ambient()}")


def join(U: Subspace, V: Subspace) -> Subspace:
    _check_same_ambient(U, V)
    return Subspace.from_rows(U.q, U.n, list(U.basis) + list(V.basis))


def complement(U: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    F = ground_field(U.q)
    n = U.n
    pivots = set(U.pivots())
    piv_list = U.pivots()
    free = [j for j in range(n) if j not in pivots]
    rows = []
    for j in free:
        v = [0] * n
        v[j] = 1
        for i, p in enumerate(piv_list):
            v[p] = F.base_neg(U.basis[i][j])
        rows.append(v)
    return Subspace.from_rows(U.q, n, rows)


def meet(U: Subspace, V: Subspace) -> Subspace:
    """U intersect V, via (U^perp + V^perp)^perp."""
    _check_same_ambient(U, V)
    m = complement(join(complement(U), complement(V)))
    assert U.dim + V.dim == join(U, V).dim + m.dim
    return m


def contains(U: Subspace, V: Subspace) -> bool:
    """True iff V <= U."""
    _check_same_ambient(U, V)
    if V.dim > U.dim:
        return False
    return all(U.contains_vector(row) for row in V.basis)


def row_space(q: int, n: int, rows: Iterable[Sequence[int]]) -> Subspace:
    return Subspace.from_rows(q, n, rows)


# ---------------------------------------------------------------------------
# counting and enumeration

def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = prod(q ** n - q ** i for i in range(d))
    den = prod(q ** d - q ** i for i in range(d))
    return num // den


def count_subspaces(q: int, n: int, d: Optional[int] = None) -> int:
    if d is not None:
        return gaussian_binomial(n, d, q)
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _check_caps(q: int, n: int, d: Optional[int], caps: Caps):
    if q ** n > caps.max_vectors:
        raise EnumerationCapExceeded(
            f"q^n = {q ** n} exceeds vector cap {caps.max_vectors}")
    if count_subspaces(q, n, d) > caps.max_subspaces:
        raise EnumerationCapExceeded(
            f"{count_subspaces(q, n, d)} subspaces exceed cap {caps.max_subspaces}")


def enumerate_subspaces(q: int, n: int, d: Optional[int] = None,
                        caps: Caps = DEFAULT_CAPS) -> Iterator[Subspace]:
    """All subspaces of F_q^n, dimension d only if given.

    Deterministic order: by dimension, then pivot-column set in colex
    order, then lexicographically on the free entries.
    """
    _check_caps(q, n, d, caps)
    dims = [d] if d is not None else list(range(n + 1))
    for k in dims:
        if k == 0:
            yield Subspace.zero(q, n)
            continue
        for pivots in sorted(itertools.combinations(range(n), k),
                             key=lambda t: tuple(reversed(t))):
            pivset = set(pivots)
            free_pos = [(i, j) for i in range(k)
                        for j in range(pivots[i] + 1, n) if j not in pivset]
            for values in itertools.product(range(q), repeat=len(free_pos)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free_pos, values):
                    rows[i][j] = v
                yield Subspace(q, n, tuple(tuple(r) for r in rows))


def subspaces_of(V: Subspace, d: Optional[int] = None,
                 caps: Caps = DEFAULT_CAPS) -> Iterator[Subspace]:
    """All subspaces of V (of dimension d if given), canonical in the ambient."""
    F = ground_field(V.q)
    if d is not None and d > V.dim:
        return
    for inner in enumerate_subspaces(V.q, V.dim, d, caps):
        rows = []
        for coeff in inner.basis:
            v = (0,) * V.n
            for c, row in zip(coeff, V.basis):
                if c:
                    v = vec_add(v, vec_scale(c, row, F), F)
            rows.append(v)
        yield Subspace.from_rows(V.q, V.n, rows)


def one_spaces(V: Subspace) -> list:
    """The (q^dim - 1)/(q - 1) one-dimensional subspaces of V."""
    F = ground_field(V.q)
    out = []
    # canonical projective representatives: first nonzero coefficient is 1
    for k in range(V.dim):
        for tail in itertools.product(range(V.q), repeat=V.dim - k - 1):
            coeff = (0,) * k + (1,) + tail
            v = (0,) * V.n
            for c, row in zip(coeff, V.basis):
                if c:
                    v = vec_add(v, vec_scale(c, row, F), F)
            out.append(Subspace.from_rows(V.q, V.n, [v]))
    return out


def quotient_map(X: Subspace):
    """The projection of F_q^n onto the quotient by X, in coordinates.

    The quotient coordinates are indexed by the non-pivot columns of X's
    RREF basis; the kernel of the returned linear map is exactly X.
    Returns (LMap, quotient_dim).
    """
    from . import maps  # deferred: maps depends on this module

    F = ground_field(X.q)
    n = X.n
    piv = X.pivots()
    nonpiv = [j for j in range(n) if j not in piv]
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        for bi, p in enumerate(piv):
            c = e[p]
            if c:
                row = X.basis[bi]
                e = [F.base_add(x, F.base_neg(F.base_mul(c, y)))
                     for x, y in zip(e, row)]
        rows.append([e[j] for j in nonpiv])
    A = Mat(F, n, len(nonpiv), [x for row in rows for x in row])
    return maps.lmap_from_matrix(A), len(nonpiv)


# ---------------------------------------------------------------------------
# the cached lattice

class SubspaceLattice:
    """Materialized subspace lattice of F_q^n with structure tables.

    Spaces are indexed in enumeration order.  Meets are mask
    intersections; joins are cached RREF computations.  All tables are
    built once and never mutated afterwards.
    """

    def __init__(self, q: int, n: int, caps: Caps = DEFAULT_CAPS):
        self.q = q
        self.n = n
        self.spaces = list(enumerate_subspaces(q, n, caps=caps))
        self.index = {S: i for i, S in enumerate(self.spaces)}
        self.dims = [S.dim for S in self.spaces]
        self.size = len(self.spaces)
        self.zero_id = self.index[Subspace.zero(q, n)]
        self.full_id = self.index[Subspace.full(q, n)]
        self.vec_masks = []
        for S in self.spaces:
            mask = 0
            for v in S.vectors():
                mask |= 1 << encode_vector(v, q)
            self.vec_masks.append(mask)
        self._mask_to_id = {m: i for i, m in enumerate(self.vec_masks)}
        self.one_ids = [i for i, d in enumerate(self.dims) if d == 1]
        self.onespace_by_vec = {}
        for i in self.one_ids:
            m = self.vec_masks[i]
            b = m & ~1
            while b:
                low = b & -b
                self.onespace_by_vec[low.bit_length() - 1] = i
                b ^= low
        self._join = {}
        self._sub_masks = None

    def id_of(self, S: Subspace) -> int:
        try:
            return self.index[S]
        except KeyError:
            raise AmbientMismatch(f"{S!r} is not a subspace of F_{self.q}^{self.n}")

    def contains_ids(self, i: int, j: int) -> bool:
        """True iff space j <= space i."""
        mj = self.vec_masks[j]
        return self.vec_masks[i] & mj == mj

    def meet_id(self, i: int, j: int) -> int:
        return self._mask_to_id[self.vec_masks[i] & self.vec_masks[j]]

    def join_id(self, i: int, j: int) -> int:
        if i == j:
            return i
        if i > j:
            i, j = j, i
        key = i * self.size + j
        got = self._join.get(key)
        if got is None:
            S = join(self.spaces[i], self.spaces[j])
            got = self.index[S]
            self._join[key] = got
        return got

    @property
    def sub_masks(self):
        """sub_masks[i] = bitmask over ids j with space_j <= space_i."""
        if self._sub_masks is None:
            masks = []
            vm = self.vec_masks
            for i in range(self.size):
                mi = vm[i]
                acc = 0
                for j in range(self.size):
                    if mi & vm[j] == vm[j]:
                        acc |= 1 << j
                masks.append(acc)
            self._sub_masks = masks
        return self._sub_masks

    def one_ids_below(self, i: int):
        mask = self.vec_masks[i]
        seen = set()
        out = []
        b = mask & ~1
        while b:
            low = b & -b
            oid = self.onespace_by_vec[low.bit_length() - 1]
            if oid not in seen:
                seen.add(oid)
                out.append(oid)
            b ^= low
        return sorted(out)

    def vectors_of(self, i: int):
        """Encoded vectors of space i (including 0)."""
        out = []
        b = self.vec_masks[i]
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out


@lru_cache(maxsize=None)
def lattice(q: int, n: int) -> SubspaceLattice:
    """Shared lattice cache for the default caps."""
    return SubspaceLattice(q, n)
