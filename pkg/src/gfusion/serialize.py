"""JSON (de)serialization of operators, subspaces, families and control pairs.

Numbers are written as Python floats (shortest round-tripping decimal, up to
17 significant digits); values survive a round trip exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .frames import ControlPair, FrameFamily
from .linalg import Subspace, as_operator


def operator_to_dict(a) -> dict:
    a = as_operator(a)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "re": [float(x) for x in a.real.ravel(order="C")],
        "im": [float(x) for x in a.imag.ravel(order="C")],
    }


def operator_from_dict(d) -> np.ndarray:
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad operator object: {exc}") from exc
    if rows < 0 or cols < 0 or re.size != rows * cols or im.size != rows * cols:
        raise ParseError(
            f"operator entry count {re.size}/{im.size} != rows*cols = {rows * cols}"
        )
    return (re + 1j * im).reshape(rows, cols)


def subspace_to_dict(m: Subspace) -> dict:
    return {"ambient_dim": m.ambient_dim, "basis": operator_to_dict(m.basis)}


def subspace_from_dict(d) -> Subspace:
    try:
        n = int(d["ambient_dim"])
        basis = operator_from_dict(d["basis"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad subspace object: {exc}") from exc
    try:
        return Subspace(n, basis)
    except Exception as exc:
        raise ParseError(f"invalid subspace: {exc}") from exc


def family_to_dict(fam: FrameFamily) -> dict:
    return {
        "ambient_dim": fam.ambient_dim,
        "items": [
            {
                "subspace": subspace_to_dict(sub),
                "lambda": operator_to_dict(lam),
                "weight": float(w),
            }
            for sub, lam, w in fam.items
        ],
    }


def family_from_dict(d) -> FrameFamily:
    try:
        n = int(d["ambient_dim"])
        raw = d["items"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad family object: {exc}") from exc
    items = []
    for i, it in enumerate(raw):
        try:
            items.append(
                (
                    subspace_from_dict(it["subspace"]),
                    operator_from_dict(it["lambda"]),
                    float(it["weight"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad family item {i}: {exc}") from exc
    try:
        return FrameFamily(n, items)
    except Exception as exc:
        raise ParseError(f"invalid family: {exc}") from exc


def control_pair_to_dict(cp: ControlPair) -> dict:
    return {"t": operator_to_dict(cp.t), "u": operator_to_dict(cp.u)}


def control_pair_from_dict(d) -> ControlPair:
    try:
        t = operator_from_dict(d["t"])
        u = operator_from_dict(d["u"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad control pair object: {exc}") from exc
    try:
        return ControlPair(t, u)
    except Exception as exc:
        raise ParseError(f"invalid control pair: {exc}") from exc


def dumps(obj: dict) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
