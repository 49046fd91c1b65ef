"""JSON and CSV formats.

Operators: ``{"dim": n, "re": [[...]], "im": [[...]]}`` (``im`` optional),
with an optional ``"isometry": true`` that switches on the isometry
contract for rectangular ``N x n`` matrices (then ``dim`` is ``[N, n]``).
Cmfs: ``{"discrete": [[point, mult], ...], "essential": [[a, b], ...]}``.
Sequences: ``{"items": [op, ...], "limit": op, "J": [op, ...], "z0": [re, im]}``.
Infinity is written as the string ``"inf"``.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math

import numpy as np

from .cmf import Cmf, validate_cmf
from .cmf_distances import acute_delta, d_disc, d_spec, delta_fin, haus_supports, lp_delta
from .convergence import OperatorSequence
from .embeddings import check_isometry
from .errors import OpDistError, ShapeError

__all__ = [
    "FormatError",
    "encode",
    "dumps",
    "operator_to_json",
    "operator_from_json",
    "cmf_to_json",
    "cmf_from_json",
    "sequence_from_json",
    "load_input",
    "cmf_csv_row",
    "CSV_HEADER",
    "rows_to_csv",
]


class FormatError(OpDistError, ValueError):
    """Input file does not follow one of the declared formats."""


def encode(obj):
    """Recursively make ``obj`` JSON-safe (inf -> "inf", arrays -> lists)."""
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return encode(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2, sort_keys=True)


def _num(x):
    if x == "inf":
        return math.inf
    if x == "-inf":
        return -math.inf
    return x


def operator_to_json(M, isometry: bool = False) -> dict:
    M = np.asarray(M, dtype=complex)
    out = {"dim": M.shape[0] if M.shape[0] == M.shape[1] and not isometry else list(M.shape),
           "re": M.real.tolist()}
    if np.any(M.imag):
        out["im"] = M.imag.tolist()
    if isometry:
        out["isometry"] = True
    return out


def operator_from_json(d: dict) -> np.ndarray:
    if not isinstance(d, dict) or "re" not in d:
        raise FormatError("operator needs a 're' array")
    try:
        re = np.array(d["re"], dtype=float)
        im = np.array(d.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"operator entries are not numeric: {exc}") from exc
    if re.ndim != 2 or re.shape != im.shape:
        raise FormatError(f"'re' and 'im' must be matrices of one shape, got {re.shape}, {im.shape}")
    M = re + 1j * im
    dim = d.get("dim")
    if d.get("isometry"):
        if dim is not None and list(np.atleast_1d(dim)) != list(M.shape):
            raise FormatError(f"dim {dim} does not match shape {M.shape}")
        try:
            return check_isometry(M)
        except ShapeError as exc:
            raise FormatError(str(exc)) from exc
    if M.shape[0] != M.shape[1]:
        raise FormatError(f"operator must be square, got {M.shape}")
    if dim is not None and dim != M.shape[0]:
        raise FormatError(f"dim {dim} does not match shape {M.shape}")
    return M


def _matrix_from_json(d):
    """Rectangular matrix (for identification operators)."""
    if not isinstance(d, dict) or "re" not in d:
        raise FormatError("matrix needs a 're' array")
    re = np.atleast_2d(np.array(d["re"], dtype=float))
    im = np.atleast_2d(np.array(d.get("im", np.zeros_like(re)), dtype=float))
    if re.shape != im.shape:
        raise FormatError("'re' and 'im' shapes differ")
    return re + 1j * im


def cmf_to_json(alpha: Cmf) -> dict:
    return alpha.to_dict()


def cmf_from_json(d: dict) -> Cmf:
    if not isinstance(d, dict) or not ({"discrete", "essential"} & set(d)):
        raise FormatError("Cmf needs 'discrete' and/or 'essential'")
    try:
        disc = [(float(p), _num(n)) for p, n in d.get("discrete", [])]
        ess = [(float(a), float(b)) for a, b in d.get("essential", [])]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed Cmf entries: {exc}") from exc
    return validate_cmf(disc, ess)


def sequence_from_json(d: dict) -> OperatorSequence:
    if not isinstance(d, dict) or "items" not in d or "limit" not in d:
        raise FormatError("sequence needs 'items' and 'limit'")
    items = [operator_from_json(x) for x in d["items"]]
    limit = operator_from_json(d["limit"])
    J = None
    if d.get("J") is not None:
        J = [_matrix_from_json(x) for x in d["J"]]
    z0 = d.get("z0")
    if z0 is not None:
        z0 = complex(z0[0], z0[1]) if isinstance(z0, (list, tuple)) else complex(z0)
    try:
        return OperatorSequence(items, limit, J, z0)
    except ShapeError as exc:
        raise FormatError(str(exc)) from exc


def load_input(path: str):
    """Read an operator or Cmf file; returns ``("matrix", M)`` or ``("cmf", alpha)``."""
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if isinstance(d, dict) and "re" in d:
        return "matrix", operator_from_json(d)
    if isinstance(d, dict) and ({"discrete", "essential"} & set(d)):
        return "cmf", cmf_from_json(d)
    raise FormatError(f"{path}: neither an operator nor a Cmf file")


CSV_HEADER = ["pair_id", "d_haus_full", "d_haus_ess", "d_disc", "delta_fin",
              "acute12", "acute21", "lp_delta", "d_spec"]


def cmf_csv_row(pair_id: str, a1: Cmf, a2: Cmf) -> dict:
    """All Cmf-level distances of one pair, keyed by :data:`CSV_HEADER`."""
    hs = haus_supports(a1, a2)
    return {
        "pair_id": pair_id,
        "d_haus_full": hs["full"],
        "d_haus_ess": hs["ess"],
        "d_disc": d_disc(a1, a2),
        "delta_fin": delta_fin(a1, a2),
        "acute12": acute_delta(a1, a2),
        "acute21": acute_delta(a2, a1),
        "lp_delta": lp_delta(a1, a2),
        "d_spec": d_spec(a1, a2),
    }


def _cell(v):
    if v is None:
        return ""
    v = encode(v)
    return repr(v) if isinstance(v, float) else str(v)


def rows_to_csv(rows, header=CSV_HEADER) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r[h]) for h in header])
    return buf.getvalue()
