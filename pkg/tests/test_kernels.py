"""Backend selection and pure/compiled kernel equivalence."""

import random

import pytest

from qmatroids import kernels
from qmatroids.kernels import _pure

fast = pytest.importorskip("qmatroids.kernels._fast") \
    if "fast" in kernels.available_backends() else None


def test_active_backend_is_known():
    assert kernels.BACKEND in kernels.available_backends()


def test_pure_rref_canonical():
    rows, rank = _pure.gf2_rref([0b1100, 0b0110, 0b1010], 4)
    assert rank == 2
    pivots = [r & -r for r in rows]
    assert pivots == sorted(pivots)


def test_pure_lmap_violation_detects_open_triple():
    # images e1, e2, e3 of a 2-space cannot be XOR-closed
    table = [0, 1, 2, 4]
    assert _pure.gf2_lmap_violation(table, 2) == (1, 2, 3)
    assert _pure.gf2_lmap_violation([0, 1, 2, 3], 2) is None


def test_pure_factor_search_forced_solution():
    # a free slot completing a triple of two fixed vectors is forced
    fixed = [0, 1, 2, -1]
    sol, nodes = _pure.gf2_factor_search(fixed, 2, [3], list(range(4)))
    assert sol == [0, 1, 2, 3]


def test_pure_factor_search_unsatisfiable():
    # fixed triple already violates closure: certificate without search
    fixed = [0, 1, 2, 4]
    sol, nodes = _pure.gf2_factor_search(fixed, 2, [], [])
    assert sol is None and nodes == 0


needs_fast = pytest.mark.skipif(fast is None, reason="compiled kernels not built")


@needs_fast
def test_rref_equivalence():
    rng = random.Random(1)
    for _ in range(800):
        n = rng.randint(1, 10)
        rows = [rng.randrange(1 << n) for _ in range(rng.randint(0, n + 2))]
        assert _pure.gf2_rref(rows, n) == fast.gf2_rref(list(rows), n)


@needs_fast
def test_key_equivalence():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(1, 6)
        rows, rank = _pure.gf2_rref(
            [rng.randrange(1 << n) for _ in range(n)], n)
        assert _pure.gf2_key(rows, n) == fast.gf2_key(rows, n)


@needs_fast
def test_lmap_violation_equivalence():
    rng = random.Random(3)
    for _ in range(400):
        dn = rng.randint(2, 4)
        table = [0] + [rng.randrange(16) for _ in range((1 << dn) - 1)]
        assert (_pure.gf2_lmap_violation(table, dn)
                == fast.gf2_lmap_violation(table, dn))


@needs_fast
def test_factor_search_equivalence():
    rng = random.Random(4)
    for _ in range(150):
        fixed = [0] + [rng.choice([-1, rng.randrange(8)]) for _ in range(15)]
        order = [i for i in range(16) if fixed[i] < 0]
        got_p = _pure.gf2_factor_search(fixed, 4, order, list(range(8)))
        got_f = fast.gf2_factor_search(fixed, 4, order, list(range(8)))
        assert got_p == got_f


@needs_fast
def test_gl_search_equivalence():
    from qmatroids import lattice
    from qmatroids.repro import blockdiag_matroid

    n = 4
    lat = lattice(2, n)
    N1 = blockdiag_matroid(2, 4, 1)
    N2 = blockdiag_matroid(2, 4, 2)
    rv1 = N1.rank_vector()
    rv2 = N2.rank_vector()
    order = sorted(range(lat.size),
                   key=lambda i: (0 if rv1[i] < lat.dims[i] else 1, lat.dims[i], i))
    space_rows = []
    for i in order:
        rows = [sum(b << c for c, b in enumerate(row))
                for row in lat.spaces[i].basis]
        space_rows.extend(rows + [0] * (n - len(rows)))
    dims = [lat.dims[i] for i in order]
    ranks1 = [rv1[i] for i in order]
    by_key = [-1] * (1 << (n * n))
    for i in range(lat.size):
        packed = [sum(b << c for c, b in enumerate(row))
                  for row in lat.spaces[i].basis]
        by_key[_pure.gf2_key(packed, n)] = rv2[i]
    flag = []
    from qmatroids import Subspace
    for j in range(1, n + 1):
        rows = tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(j))
        flag.append(rv1[lat.id_of(Subspace(2, n, rows))])
    for prune in (False, True):
        got_p = _pure.gl2_iso_search(n, space_rows, dims, ranks1, by_key,
                                     flag, prune)
        got_f = fast.gl2_iso_search(n, space_rows, dims, ranks1, by_key,
                                    flag, prune)
        assert got_p == got_f
        assert got_p[0] is None
    # positive case: N2 against itself finds a witness with matching counts
    ranks_self = [rv2[i] for i in order]
    by_key_self = by_key
    flag_self = []
    for j in range(1, n + 1):
        rows = tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(j))
        flag_self.append(rv2[lat.id_of(Subspace(2, n, rows))])
    got_p = _pure.gl2_iso_search(n, space_rows, dims, ranks_self, by_key_self,
                                 flag_self, True)
    got_f = fast.gl2_iso_search(n, space_rows, dims, ranks_self, by_key_self,
                                flag_self, True)
    assert got_p == got_f and got_p[0] is not None


def test_env_override_forces_pure(tmp_path):
    import subprocess
    import sys

    code = ("import qmatroids.kernels as k; print(k.BACKEND)")
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"QMATROIDS_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True)
    assert out.stdout.strip() == "pure"
