import json

import pytest

from clusteratom.cluster import Quiver, QuiverError
from clusteratom.formats import (
    FormatError,
    decorated_from_json,
    decorated_to_json,
    load_input,
    matrix_from_json,
    qp_from_json,
    qp_to_json,
    quiver_from_json,
    quiver_to_json,
    rep_from_json,
    rep_to_json,
    standard_quiver,
)
from clusteratom.qp import build_cluster_rep, qp_along_walk, QP, primitive_potential
from clusteratom.representations import enumerate_indecomposables

from conftest import CYCLE3, dynkin


def test_quiver_json():
    obj = {"n": 3, "arrows": [[1, 2], [2, 3], [3, 1]]}
    q = quiver_from_json(obj)
    assert q == CYCLE3
    assert quiver_to_json(q) == obj


def test_quiver_json_sorted_fixed_point():
    obj = {"n": 3, "arrows": [[3, 1], [1, 2], [2, 3]]}
    once = quiver_to_json(quiver_from_json(obj))
    assert quiver_to_json(quiver_from_json(once)) == once


def test_matrix_json():
    assert matrix_from_json([[0, -1], [1, 0]]) == ((0, -1), (1, 0))
    with pytest.raises(QuiverError):
        matrix_from_json([[0, 1], [1, 0]])
    with pytest.raises(FormatError):
        matrix_from_json({"a": 1})


def test_standard_quivers():
    assert standard_quiver("a3") == Quiver(3, ((0, 1), (1, 2)))
    assert standard_quiver("D4").out_arrows(1) == [(1, 2), (1, 3)]
    assert standard_quiver("E6").out_arrows(2) == [(2, 3), (2, 5)]
    with pytest.raises(FormatError):
        standard_quiver("F4")


def test_qp_round_trip():
    root = QP(CYCLE3, primitive_potential(CYCLE3))
    for qp in qp_along_walk(root, [0, 1, 2, 1]):
        obj = json.loads(json.dumps(qp_to_json(qp)))
        assert qp_from_json(obj) == qp
        assert qp_to_json(qp_from_json(obj)) == obj


def test_rep_round_trip():
    for M in enumerate_indecomposables(standard_quiver("D4")):
        obj = json.loads(json.dumps(rep_to_json(M)))
        back = rep_from_json(obj)
        assert back.same_as(M)
        assert rep_to_json(back) == obj


def test_decorated_round_trip():
    B = dynkin("A3")
    for walk, k in (([], 0), ([1, 0], 1), ([0, 1, 2], 2)):
        dec = build_cluster_rep(B, walk, k=k)
        obj = json.loads(json.dumps(decorated_to_json(dec)))
        back = decorated_from_json(obj)
        assert back.rep.same_as(dec.rep) and back.decoration == dec.decoration and back.qp == dec.qp
        assert decorated_to_json(back) == obj


def test_rational_strings():
    from clusteratom.representations import rep_build

    M = rep_build(Quiver(2, ((0, 1),)), (1, 1), [[["-3/2"]]])
    assert rep_to_json(M)["maps"] == [[["-3/2"]]]


def test_load_input(tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps({"n": 2, "arrows": [[1, 2]]}))
    assert load_input(str(p)) == (((0, -1), (1, 0)), None)
    p.write_text(json.dumps({"matrix": [[0, 1], [-1, 0]]}))
    assert load_input(str(p))[0] == ((0, 1), (-1, 0))
    p.write_text("[[0, 1], [-1, 0]]")
    assert load_input(str(p))[0] == ((0, 1), (-1, 0))
    assert load_input("A2")[0] == ((0, -1), (1, 0))
    p.write_text("{not json")
    with pytest.raises(FormatError):
        load_input(str(p))
    with pytest.raises(FormatError):
        load_input(str(tmp_path / "missing.json"))
