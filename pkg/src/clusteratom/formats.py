"""JSON encodings of quivers, matrices, QPs and (decorated) representations.

Vertices are 1-based in every JSON payload.  Potential cycles refer to
arrows by their 0-based position in the quiver's ``arrows`` list, which is
always written in sorted order.  Rational matrix entries are strings such as
``"-3/2"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cluster import Matrix, Quiver, QuiverError, check_skew, quiver_to_matrix
from .qp import QP, DecoratedRep, Potential, QPError
from .representations import QuiverRepresentation, rep_build

__all__ = [
    "FormatError",
    "standard_quiver",
    "quiver_to_json",
    "quiver_from_json",
    "matrix_from_json",
    "matrix_to_json",
    "qp_to_json",
    "qp_from_json",
    "rep_to_json",
    "rep_from_json",
    "decorated_to_json",
    "decorated_from_json",
    "load_input",
    "dumps",
]


class FormatError(ValueError):
    pass


def standard_quiver(name: str) -> Quiver:
    """Dynkin quiver with arrows pointing away from vertex 1 along the chain.

    ``D_n`` branches at vertex n-2 and ``E_n`` at vertex 3.
    """
    m = re.fullmatch(r"([ADE])(\d+)", name.strip().upper())
    if not m:
        raise FormatError(f"unknown Dynkin type {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and n >= 1:
        arrows = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D" and n >= 4:
        arrows = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E" and n in (6, 7, 8):
        arrows = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise FormatError(f"unsupported Dynkin type {name!r}")
    return Quiver(n, tuple(arrows))


def quiver_to_json(q: Quiver) -> dict:
    return {"n": q.n, "arrows": [[t + 1, h + 1] for t, h in q.arrows]}


def quiver_from_json(obj: Any) -> Quiver:
    try:
        n = int(obj["n"])
        arrows = tuple((int(t) - 1, int(h) - 1) for t, h in obj["arrows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad quiver JSON: {exc}") from exc
    return Quiver(n, arrows)


def matrix_from_json(obj: Any) -> Matrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise FormatError("matrix JSON must be a list of rows")
    try:
        rows = [[int(x) for x in r] for r in obj]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix entry: {exc}") from exc
    return check_skew(rows)


def qp_to_json(qp: QP) -> dict:
    index = {a: i for i, a in enumerate(qp.quiver.arrows)}
    return {
        "quiver": quiver_to_json(qp.quiver),
        "potential": [{"cycle": [index[a] for a in cyc], "coeff": c} for cyc, c in qp.potential.terms],
    }


def qp_from_json(obj: Any) -> QP:
    q = quiver_from_json(obj["quiver"])
    try:
        terms = [([q.arrows[i] for i in t["cycle"]], int(t["coeff"])) for t in obj.get("potential", [])]
    except (IndexError, KeyError, TypeError) as exc:
        raise FormatError(f"bad potential JSON: {exc}") from exc
    return QP(q, Potential.from_terms(terms))


def _frac(x: Any) -> str:
    return str(Fraction(x))


def rep_to_json(M: QuiverRepresentation) -> dict:
    if M.field is not None:
        raise FormatError("only representations over Q are serialised")
    return {
        "quiver": quiver_to_json(M.quiver),
        "dims": list(M.dims),
        "maps": [[[_frac(x) for x in row] for row in M.action(a).tolist()] for a in M.quiver.arrows],
    }


def rep_from_json(obj: Any) -> QuiverRepresentation:
    q = quiver_from_json(obj["quiver"])
    dims = [int(d) for d in obj["dims"]]
    maps = obj["maps"]
    if len(maps) != len(q.arrows):
        raise FormatError("one matrix per arrow is required")
    mats = []
    for a, m in zip(q.arrows, maps):
        rows, cols = dims[a[1]], dims[a[0]]
        if rows == 0 or cols == 0:
            mats.append([[Fraction(0)] * cols for _ in range(rows)])
        else:
            mats.append([[Fraction(x) for x in row] for row in m])
    return rep_build(q, dims, mats)


def decorated_to_json(dec: DecoratedRep) -> dict:
    return {
        "qp": qp_to_json(dec.qp),
        "representation": rep_to_json(dec.rep),
        "decoration": list(dec.decoration),
    }


def decorated_from_json(obj: Any) -> DecoratedRep:
    qp = qp_from_json(obj["qp"])
    rep = rep_from_json(obj["representation"])
    return DecoratedRep(qp, rep, tuple(int(v) for v in obj["decoration"]))


def load_input(source: str) -> tuple[Matrix, QP | None]:
    """Exchange matrix (and QP when given) from a JSON file or a Dynkin name.

    Accepted payloads: a quiver object, a bare matrix, ``{"matrix": ...}``,
    or a QP object ``{"quiver": ..., "potential": ...}``.
    """
    path = Path(source)
    if not path.exists():
        try:
            return quiver_to_matrix(standard_quiver(source)), None
        except FormatError:
            raise FormatError(f"{source!r} is neither a readable file nor a Dynkin type") from None
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: {exc}") from exc
    try:
        if isinstance(obj, list):
            return matrix_from_json(obj), None
        if "matrix" in obj:
            return matrix_from_json(obj["matrix"]), None
        if "quiver" in obj:
            qp = qp_from_json(obj)
            return qp.B, qp
        return quiver_to_matrix(quiver_from_json(obj)), None
    except (QuiverError, QPError) as exc:
        raise FormatError(str(exc)) from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def matrix_to_json(B: Matrix) -> list[list[int]]:
    return [list(r) for r in B]

