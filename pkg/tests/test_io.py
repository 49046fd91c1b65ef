import json
import math

import numpy as np
import pytest

from opdist.cmf import Cmf
from opdist.errors import IsolationError
from opdist.io import (
    CSV_HEADER,
    FormatError,
    cmf_csv_row,
    cmf_from_json,
    cmf_to_json,
    dumps,
    encode,
    load_input,
    operator_from_json,
    operator_to_json,
    rows_to_csv,
    sequence_from_json,
)


def test_encode_infinity():
    assert encode({"a": math.inf, "b": [1.0, -math.inf]}) == {"a": "inf", "b": [1.0, "-inf"]}
    assert json.loads(dumps({"x": math.inf}))["x"] == "inf"
    assert encode(np.array([1, 2])) == [1, 2]
    assert encode(np.float64(0.5)) == 0.5


def test_operator_roundtrip():
    M = np.array([[1.0, 2j], [-2j, 3.0]])
    assert np.array_equal(operator_from_json(operator_to_json(M)), M)
    real = operator_to_json(np.eye(2))
    assert "im" not in real and real["dim"] == 2


def test_operator_errors():
    with pytest.raises(FormatError):
        operator_from_json({"dim": 2})
    with pytest.raises(FormatError):
        operator_from_json({"re": [[1, 2]]})
    with pytest.raises(FormatError):
        operator_from_json({"dim": 3, "re": [[1]]})
    with pytest.raises(FormatError):
        operator_from_json({"re": [["x"]]})


def test_isometry_flag():
    iso = {"dim": [2, 1], "re": [[1.0], [0.0]], "isometry": True}
    assert operator_from_json(iso).shape == (2, 1)
    with pytest.raises(FormatError):
        operator_from_json({"re": [[2.0], [0.0]], "isometry": True})
    with pytest.raises(FormatError):
        operator_from_json({"dim": [3, 1], "re": [[1.0], [0.0]], "isometry": True})


def test_cmf_roundtrip_and_errors():
    a = Cmf.make({0: 2}, [(1, 2)])
    assert cmf_from_json(cmf_to_json(a)) == a
    with pytest.raises(FormatError):
        cmf_from_json({"points": []})
    with pytest.raises(IsolationError):
        cmf_from_json({"discrete": [[1.5, 1]], "essential": [[1, 2]]})


def test_sequence_from_json():
    d = {"items": [{"re": [[1.0]]}], "limit": {"re": [[0.0]]}, "J": [{"re": [[1.0]]}],
         "z0": [0.0, 1.0]}
    seq = sequence_from_json(d)
    assert seq.z0 == 1j and seq.J[0].shape == (1, 1)
    with pytest.raises(FormatError):
        sequence_from_json({"items": []})
    with pytest.raises(FormatError):
        sequence_from_json({"items": [{"re": [[1.0]]}], "limit": {"re": [[0.0]]},
                            "J": [{"re": [[1.0, 0.0]]}]})


def test_load_input(tmp_path):
    p = tmp_path / "op.json"
    p.write_text(json.dumps({"re": [[1.0]]}))
    assert load_input(str(p))[0] == "matrix"
    q = tmp_path / "c.json"
    q.write_text(json.dumps({"essential": [[0, 1]]}))
    assert load_input(str(q))[0] == "cmf"
    r = tmp_path / "bad.json"
    r.write_text("{")
    with pytest.raises(FormatError):
        load_input(str(r))
    r.write_text("[1, 2]")
    with pytest.raises(FormatError):
        load_input(str(r))
    with pytest.raises(FormatError):
        load_input(str(tmp_path / "missing.json"))


def test_csv_row_and_infinity():
    a, b = Cmf.make({0: 1}), Cmf.make({0: 1, 1: 1})
    row = cmf_csv_row("p", a, b)
    assert row["d_spec"] == math.inf
    text = rows_to_csv([row])
    header, line = text.strip().split("\n")
    assert header.split(",") == CSV_HEADER
    assert "inf" in line.split(",")
