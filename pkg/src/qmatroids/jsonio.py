"""JSON formats for fields, subspaces, matroids and maps.

Matroid spec files carry {"q", "n", "kind", ...payload}; kinds are
"uniform", "matrix", "rank_table" and "flats".  Matrix payloads embed
the field data (p, k, m and both moduli) and the rows of G as element
coefficient lists over GF(q).  Rank tables are keyed by serialized
canonical bases, listed in lattice enumeration order so that artifacts
round-trip byte-identically.
"""

from __future__ import annotations

import json
from typing import Dict

from .errors import ParseError
from .fields import FieldSpec, make_field
from .maps import LMap, lmap_from_matrix, lmap_from_table
from .qmatroid import FlatFamily, QMatroid, from_flats, from_matrix, from_rank_table, uniform
from .subspaces import Mat, Subspace, lattice


def field_to_dict(spec: FieldSpec) -> dict:
    return {"p": spec.p, "k": spec.k, "m": spec.m,
            "base_modulus": list(spec.base_modulus),
            "ext_modulus": list(spec.ext_modulus)}


def field_from_dict(d: dict) -> FieldSpec:
    moduli = None
    if "base_modulus" in d and "ext_modulus" in d:
        moduli = (tuple(d["base_modulus"]), tuple(d["ext_modulus"]))
    return make_field(int(d["p"]), int(d.get("k", 1)), int(d.get("m", 1)),
                      moduli=moduli)


def subspace_to_dict(S: Subspace) -> dict:
    return S.to_dict()


def subspace_from_dict(d: dict) -> Subspace:
    return Subspace.from_dict(d)


def matroid_to_dict(M: QMatroid, materialize: bool = False) -> dict:
    """Serialize a matroid; materialize=True forces a rank_table artifact."""
    q, n = M.ambient()
    if materialize:
        lat = lattice(q, n)
        rv = M.rank_vector()
        return {"q": q, "n": n, "kind": "rank_table",
                "table": [[[list(r) for r in S.basis], rv[i]]
                          for i, S in enumerate(lat.spaces)]}
    if M.kind == "uniform":
        return {"q": q, "n": n, "kind": "uniform", "k": M.payload["k"]}
    if M.kind in ("matrix", "blockdiag"):
        G: Mat = M.payload["G"]
        return {"q": q, "n": n, "kind": "matrix",
                "field": field_to_dict(G.spec),
                "rows": [[list(G.spec.coeffs(x)) for x in G.row(i)]
                         for i in range(G.rows)]}
    if M.kind == "flats":
        fam: FlatFamily = M.payload["flats"]
        return {"q": q, "n": n, "kind": "flats",
                "members": [[list(r) for r in S.basis]
                            for S in fam.sorted_members]}
    return matroid_to_dict(M, materialize=True)


def matroid_from_dict(d: dict) -> QMatroid:
    try:
        q, n, kind = int(d["q"]), int(d["n"]), d["kind"]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"matroid spec missing q/n/kind: {e}")
    if kind == "uniform":
        return uniform(q, n, int(d["k"]))
    if kind == "matrix":
        spec = field_from_dict(d["field"])
        if spec.q != q:
            raise ParseError(f"field base GF({spec.q}) does not match q={q}")
        rows = [[spec.from_coeffs(entry) for entry in row] for row in d["rows"]]
        return from_matrix(Mat.from_rows(spec, rows))
    if kind == "rank_table":
        table: Dict[Subspace, int] = {}
        for basis, rank in d["table"]:
            table[Subspace.from_rows(q, n, basis)] = int(rank)
        return from_rank_table(q, n, table)
    if kind == "flats":
        members = [Subspace.from_rows(q, n, basis) for basis in d["members"]]
        return from_flats(FlatFamily(q, n, members))
    raise ParseError(f"unknown matroid kind {kind!r}")


def map_to_dict(phi: LMap) -> dict:
    if phi.is_linear:
        A = phi.linear_matrix
        return {"kind": "matrix", "q": phi.q, "n1": phi.n1, "n2": phi.n2,
                "rows": [list(A.row(i)) for i in range(A.rows)]}
    return {"kind": "table", "q": phi.q, "n1": phi.n1, "n2": phi.n2,
            "images": list(phi.table[1:])}


def map_from_dict(d: dict) -> LMap:
    try:
        kind, q = d["kind"], int(d["q"])
        n1, n2 = int(d["n1"]), int(d["n2"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"map spec missing kind/q/n1/n2: {e}")
    if kind == "matrix":
        from .fields import ground_field
        F = ground_field(q)
        flat = [x for row in d["rows"] for x in row]
        return lmap_from_matrix(Mat(F, n1, n2, flat))
    if kind == "table":
        images = [0] + [int(x) for x in d["images"]]
        if len(images) != q ** n1:
            raise ParseError(f"table must list the {q ** n1 - 1} nonzero images")
        return lmap_from_table(q, n1, n2, images)
    raise ParseError(f"unknown map kind {kind!r}")


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}")


def dump_json(obj, path: str):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
