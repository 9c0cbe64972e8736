"""Maps between ground spaces that send subspaces to subspaces.

An LMap stores the total table of a map F_q^n1 -> F_q^n2 on encoded
vectors.  Verification only needs to look at 1- and 2-dimensional
subspaces of the domain: the image of any subspace is closed under
addition as soon as the images of the 2-spaces through its vector pairs
are subspaces, and closed under scaling as soon as the 1-space images
are.  The brute-force check over all subspaces is kept in the test suite
as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import kernels
from .errors import (
    AmbientMismatch,
    NotAnLMap,
    NotBijective,
    ZeroNotFixed,
)
from .fields import ground_field
from .subspaces import (
    Mat,
    Subspace,
    decode_vector,
    encode_vector,
    lattice,
    rref,
    vec_scale,
)


class LMap:
    """A verified subspace-to-subspace map between F_q^n1 and F_q^n2."""

    __slots__ = ("q", "n1", "n2", "table", "linear_matrix", "automorphism",
                 "semilinear_matrix", "verified")

    def __init__(self, q, n1, n2, table, linear_matrix=None,
                 automorphism=None, semilinear_matrix=None, verified=False):
        self.q = q
        self.n1 = n1
        self.n2 = n2
        self.table = tuple(table)
        self.linear_matrix = linear_matrix
        self.automorphism = automorphism
        self.semilinear_matrix = semilinear_matrix
        self.verified = verified

    # ------------------------------------------------------------ basics

    @property
    def is_linear(self) -> bool:
        return self.linear_matrix is not None

    @property
    def domain(self):
        return (self.q, self.n1)

    @property
    def codomain(self):
        return (self.q, self.n2)

    def __call__(self, vec: Sequence[int]):
        return decode_vector(self.table[encode_vector(vec, self.q)], self.q, self.n2)

    def apply_enc(self, code: int) -> int:
        return self.table[code]

    def image_of(self, V: Subspace) -> Subspace:
        """The image set of V, as a canonical subspace of the codomain."""
        if (V.q, V.n) != (self.q, self.n1):
            raise AmbientMismatch("subspace does not live in the domain")
        codes = {self.table[encode_vector(v, self.q)] for v in V.vectors()}
        rows = [decode_vector(c, self.q, self.n2) for c in codes if c]
        return Subspace.from_rows(self.q, self.n2, rows)

    def is_bijective(self) -> bool:
        return (self.n1 == self.n2
                and len(set(self.table)) == self.q ** self.n1)

    def inverse(self) -> "LMap":
        """Inverse of a bijective L-map (itself an L-map)."""
        if not self.is_bijective():
            raise NotBijective("map is not bijective")
        size = self.q ** self.n1
        inv = [0] * size
        for v, w in enumerate(self.table):
            inv[w] = v
        return lmap_from_table(self.q, self.n1, self.n2, inv)

    def as_matrix(self) -> Mat:
        if self.linear_matrix is None:
            raise ValueError("map is not linear")
        return self.linear_matrix

    def __eq__(self, other):
        return (isinstance(other, LMap)
                and (self.q, self.n1, self.n2) == (other.q, other.n1, other.n2)
                and self.table == other.table)

    def __hash__(self):
        return hash((self.q, self.n1, self.n2, self.table))

    def __repr__(self):
        kind = "linear" if self.is_linear else (
            "semilinear" if self.semilinear_matrix is not None else "nonlinear")
        return f"LMap(F{self.q}^{self.n1}->F{self.q}^{self.n2}, {kind})"


# ---------------------------------------------------------------------------
# constructors

def _detect_structure(q, n1, n2, table):
    """Return (linear_matrix, automorphism, semilinear_matrix) for the table."""
    F = ground_field(q)
    rows = []
    for i in range(n1):
        e = [0] * n1
        e[i] = 1
        rows.append(decode_vector(table[encode_vector(e, q)], q, n2))
    A = Mat(F, n1, n2, [x for r in rows for x in r])
    for j in range(F.k if F.k > 1 else 1):
        ok = True
        for code in range(q ** n1):
            v = decode_vector(code, q, n1)
            sv = tuple(F.base_frobenius(x, j) for x in v)
            out = _apply_matrix(sv, A, F)
            if encode_vector(out, q) != table[code]:
                ok = False
                break
        if ok:
            if j == 0:
                return A, 0, None
            return None, j, A
    return None, None, None


def _apply_matrix(vec, A: Mat, F):
    out = [0] * A.cols
    for i, c in enumerate(vec):
        if c:
            for j in range(A.cols):
                a = A.entries[i * A.cols + j]
                if a:
                    out[j] = F.base_add(out[j], F.base_mul(c, a))
    return tuple(out)


def _set_is_subspace(codes, q, n):
    """Check a set of encoded vectors (containing 0) is a subspace."""
    rows = [decode_vector(c, q, n) for c in codes if c]
    _, rank = rref(rows, q, n)
    return q ** rank == len(codes)


def lmap_from_table(q: int, n1: int, n2: int, table_or_fn) -> LMap:
    """Build and verify an LMap from a total vector map.

    ``table_or_fn`` is either a sequence of encoded images (one per
    encoded domain vector) or a callable on coordinate tuples.  Raises
    ZeroNotFixed or NotAnLMap (with a witness subspace) on failure.
    """
    size = q ** n1
    if callable(table_or_fn):
        table = []
        for code in range(size):
            v = decode_vector(code, q, n1)
            w = table_or_fn(v)
            table.append(encode_vector(w, q))
    else:
        table = [int(x) for x in table_or_fn]
        if len(table) != size:
            raise ValueError(f"table must have {size} entries")
    if table[0] != 0:
        raise ZeroNotFixed("an L-map must send 0 to 0")
    if any(not 0 <= x < q ** n2 for x in table):
        raise ValueError("table entry out of codomain range")

    if q == 2:
        bad = kernels.gf2_lmap_violation(table, n1)
        if bad is not None:
            a, b, _ = bad
            W = Subspace.from_rows(q, n1, [decode_vector(a, q, n1),
                                           decode_vector(b, q, n1)])
            raise NotAnLMap(W)
    else:
        F = ground_field(q)
        # 1-spaces: the image set of <v> must be a subspace
        for code in range(1, size):
            v = decode_vector(code, q, n1)
            codes = {table[encode_vector(vec_scale(lam, v, F), q)]
                     for lam in range(q)}
            if not _set_is_subspace(codes, q, n2):
                raise NotAnLMap(Subspace.from_rows(q, n1, [v]))
        # 2-spaces
        for W in _two_spaces(q, n1):
            codes = {table[encode_vector(v, q)] for v in W.vectors()}
            if not _set_is_subspace(codes, q, n2):
                raise NotAnLMap(W)

    A, auto, semi = _detect_structure(q, n1, n2, table)
    return LMap(q, n1, n2, table, linear_matrix=A, automorphism=auto,
                semilinear_matrix=semi, verified=True)


def _two_spaces(q, n):
    from .subspaces import enumerate_subspaces
    return enumerate_subspaces(q, n, 2)


def lmap_from_matrix(A: Mat, automorphism: int = 0) -> LMap:
    """LMap of the (semi)linear map v -> sigma(v) A (row-vector convention).

    Semilinear maps are always L-maps, so no enumeration is needed for
    verification.
    """
    F = A.spec
    q, n1, n2 = F.q, A.rows, A.cols
    table = []
    for code in range(q ** n1):
        v = decode_vector(code, q, n1)
        if automorphism:
            v = tuple(F.base_frobenius(x, automorphism) for x in v)
        table.append(encode_vector(_apply_matrix(v, A, F), q))
    if automorphism % max(F.k, 1) == 0:
        return LMap(q, n1, n2, table, linear_matrix=A, automorphism=0,
                    verified=True)
    return LMap(q, n1, n2, table, linear_matrix=None,
                automorphism=automorphism, semilinear_matrix=A, verified=True)


def identity_map(q: int, n: int) -> LMap:
    F = ground_field(q)
    eye = Mat(F, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])
    return lmap_from_matrix(eye)


def zero_map(q: int, n1: int, n2: int) -> LMap:
    F = ground_field(q)
    return lmap_from_matrix(Mat(F, n1, n2, [0] * (n1 * n2)))


def embedding_map(X: Subspace) -> LMap:
    """The linear embedding F_q^dim(X) -> F_q^n given by X's RREF basis."""
    F = ground_field(X.q)
    return lmap_from_matrix(Mat(F, X.dim, X.n, [x for r in X.basis for x in r]))


def iota_maps(q: int, n1: int, n2: int):
    """The two block embeddings into F_q^(n1+n2): x -> (x,0) and y -> (0,y)."""
    F = ground_field(q)
    n = n1 + n2
    A1 = Mat(F, n1, n, [1 if j == i else 0 for i in range(n1) for j in range(n)])
    A2 = Mat(F, n2, n, [1 if j == i + n1 else 0 for i in range(n2) for j in range(n)])
    return lmap_from_matrix(A1), lmap_from_matrix(A2)


def pi_maps(q: int, n1: int, n2: int):
    """The coordinate projections of F_q^(n1+n2) onto the two blocks."""
    F = ground_field(q)
    n = n1 + n2
    A1 = Mat(F, n, n1, [1 if j == i else 0 for i in range(n) for j in range(n1)])
    A2 = Mat(F, n, n2, [1 if j == i - n1 else 0 for i in range(n) for j in range(n2)])
    return lmap_from_matrix(A1), lmap_from_matrix(A2)


# ---------------------------------------------------------------------------
# image, preimage, composition, equivalence

def image_subspace(phi: LMap, V: Subspace) -> Subspace:
    return phi.image_of(V)


def preimage(phi: LMap, W: Subspace):
    """Preimage of W: (encoded vector set, is_subspace, Subspace or None)."""
    if (W.q, W.n) != (phi.q, phi.n2):
        raise AmbientMismatch("subspace does not live in the codomain")
    wmask = 0
    for v in W.vectors():
        wmask |= 1 << encode_vector(v, phi.q)
    codes = frozenset(v for v, w in enumerate(phi.table) if (wmask >> w) & 1)
    if _set_is_subspace(codes, phi.q, phi.n1):
        rows = [decode_vector(c, phi.q, phi.n1) for c in codes if c]
        return codes, True, Subspace.from_rows(phi.q, phi.n1, rows)
    return codes, False, None


def compose(phi: LMap, psi: LMap) -> LMap:
    """phi after psi."""
    if phi.domain != psi.codomain:
        raise AmbientMismatch("codomain of inner map must equal domain of outer")
    table = tuple(phi.table[w] for w in psi.table)
    if phi.is_linear and psi.is_linear:
        A = psi.linear_matrix.mul(phi.linear_matrix)
        return LMap(phi.q, psi.n1, phi.n2, table, linear_matrix=A, automorphism=0,
                    verified=phi.verified and psi.verified)
    A, auto, semi = _detect_structure(phi.q, psi.n1, phi.n2, table)
    return LMap(phi.q, psi.n1, phi.n2, table, linear_matrix=A, automorphism=auto,
                semilinear_matrix=semi, verified=phi.verified and psi.verified)


def l_equivalent(phi: LMap, psi: LMap) -> bool:
    """True iff the induced maps agree on every 1-space of the domain."""
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise AmbientMismatch("maps must share domain and codomain")
    q, n1 = phi.q, phi.n1
    F = ground_field(q)
    result = True
    for code in range(1, q ** n1):
        v = decode_vector(code, q, n1)
        sp = {phi.table[encode_vector(vec_scale(lam, v, F), q)] for lam in range(q)}
        sq = {psi.table[encode_vector(vec_scale(lam, v, F), q)] for lam in range(q)}
        if sp != sq:
            result = False
            break
    if phi.is_linear and psi.is_linear:
        assert result == _scalar_equivalent(phi, psi), \
            "1-space criterion disagrees with the scalar criterion"
    return result


def _scalar_equivalent(phi: LMap, psi: LMap) -> bool:
    # linear maps are equivalent iff phi = lambda psi for a nonzero scalar
    q = phi.q
    F = ground_field(q)
    lam = None
    for code in range(1, q ** phi.n1):
        a = decode_vector(phi.table[code], q, phi.n2)
        b = decode_vector(psi.table[code], q, phi.n2)
        if not any(a) and not any(b):
            continue
        if any(a) != any(b):
            return False
        j = next(i for i, x in enumerate(b) if x)
        cand = F.base_mul(a[j], F.base_inv(b[j]))
        if cand == 0 or a != vec_scale(cand, b, F):
            return False
        if lam is None:
            lam = cand
        elif lam != cand:
            return False
    return True


def pointwise_scalars(phi: LMap, psi: LMap):
    """For equivalent maps: the scalars lambda_v with phi(v) = lambda_v psi(v).

    Returns a dict encoded-vector -> scalar index, or None if some vector
    admits no scalar.
    """
    q = phi.q
    F = ground_field(q)
    out = {}
    for code in range(1, q ** phi.n1):
        a = decode_vector(phi.table[code], q, phi.n2)
        b = decode_vector(psi.table[code], q, phi.n2)
        if not any(a) and not any(b):
            out[code] = 1
            continue
        if any(a) != any(b):
            return None
        j = next(i for i, x in enumerate(b) if x)
        lam = F.base_mul(a[j], F.base_inv(b[j]))
        if lam == 0 or a != vec_scale(lam, b, F):
            return None
        out[code] = lam
    return out


def tweak_equivalent(psi: LMap, w: Sequence[int], tau: int) -> LMap:
    """Redefine psi on the line through w without changing 1-space images.

    With w_hat = psi^{-1}(tau psi(w)), the new map sends mu*w to
    psi(mu*w_hat) and agrees with psi elsewhere.  The result is an
    L-isomorphism equivalent to psi; tau = 1 returns psi itself.
    """
    if not psi.verified:
        raise ValueError("psi must be a verified L-map")
    if not psi.is_bijective():
        raise NotBijective("tweak construction needs a bijective map")
    q = psi.q
    F = ground_field(q)
    if not any(w):
        raise ValueError("w must be nonzero")
    if tau == 0:
        raise ValueError("tau must be nonzero")
    if tau == 1:
        return psi
    inv = {img: v for v, img in enumerate(psi.table)}
    pw = decode_vector(psi.table[encode_vector(w, q)], q, psi.n2)
    target = encode_vector(vec_scale(tau, pw, F), q)
    w_hat = decode_vector(inv[target], q, psi.n1)
    table = list(psi.table)
    for mu in range(q):
        src = encode_vector(vec_scale(mu, tuple(w), F), q)
        table[src] = psi.table[encode_vector(vec_scale(mu, w_hat, F), q)]
    phi = lmap_from_table(q, psi.n1, psi.n2, table)
    assert l_equivalent(phi, psi)
    return phi


class LClass:
    """Equivalence class of L-maps inducing the same map on subspaces."""

    __slots__ = ("representative",)

    def __init__(self, representative: LMap):
        self.representative = representative

    def __call__(self, V: Subspace) -> Subspace:
        return self.representative.image_of(V)

    def compose(self, other: "LClass") -> "LClass":
        return LClass(compose(self.representative, other.representative))

    def __eq__(self, other):
        if not isinstance(other, LClass):
            return NotImplemented
        return l_equivalent(self.representative, other.representative)

    def __hash__(self):
        # hash by the induced 1-space map
        q, n1 = self.representative.q, self.representative.n1
        F = ground_field(q)
        key = []
        for code in range(1, q ** n1):
            v = decode_vector(code, q, n1)
            key.append(frozenset(
                self.representative.table[encode_vector(vec_scale(l, v, F), q)]
                for l in range(q)))
        return hash(tuple(key))

    def __repr__(self):
        return f"LClass({self.representative!r})"


# ---------------------------------------------------------------------------
# classification against q-matroids

@dataclass
class MapTypeReport:
    is_weak: bool
    is_strong: bool
    is_rank_preserving: bool
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.is_rank_preserving and not self.is_weak:
            raise AssertionError("rank-preserving must imply weak")


def classify_map(phi: LMap, M1, M2, witness_limit: int = 10) -> MapTypeReport:
    """Classify phi as weak / strong / rank-preserving from M1 to M2.

    Weakness and rank-preservation sweep every subspace of the domain;
    strongness checks the preimage of every flat of M2 (a preimage that
    is not even a subspace fails with that witness).
    """
    if not phi.verified:
        raise ValueError("phi must be a verified L-map")
    if phi.domain != (M1.q, M1.n) or phi.codomain != (M2.q, M2.n):
        raise AmbientMismatch("map ambients do not match the matroids")
    lat1 = lattice(phi.q, phi.n1)
    weak_viol, rp_viol, strong_viol = [], [], []
    for S in lat1.spaces:
        r1 = M1.rank(S)
        r2 = M2.rank(phi.image_of(S))
        if r2 > r1 and len(weak_viol) < witness_limit:
            weak_viol.append((S, r1, r2))
        if r2 != r1 and len(rp_viol) < witness_limit:
            rp_viol.append((S, r1, r2))
    flats1 = M1.flats().members
    for F in M2.flats().members:
        codes, is_sub, P = preimage(phi, F)
        if not is_sub:
            if len(strong_viol) < witness_limit:
                strong_viol.append((F, "preimage is not a subspace"))
            continue
        if P not in flats1 and len(strong_viol) < witness_limit:
            strong_viol.append((F, P))
    return MapTypeReport(
        is_weak=not weak_viol,
        is_strong=not strong_viol,
        is_rank_preserving=not rp_viol,
        witnesses={"weak": weak_viol, "strong": strong_viol,
                   "rank_preserving": rp_viol},
    )


def is_weak_linear_via_circuits(phi: LMap, M1, M2) -> bool:
    """Weakness test for linear maps through the circuit criterion.

    A linear map fails to be weak exactly when some circuit C of M1 has
    an independent image of the same dimension with strictly larger rank.
    """
    if not phi.is_linear:
        raise ValueError("circuit criterion applies to linear maps only")
    for C in M1.circuits():
        img = phi.image_of(C)
        if (M2.rank(img) > M1.rank(C) and img.dim == C.dim
                and M2.rank(img) == img.dim):
            return False
    return True
