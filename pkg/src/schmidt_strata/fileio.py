"""JSON state and expression files.

State file::

    {"n": 2, "m": 2, "vec": [[re, im], ...]}          # n*m pairs, row-major

Expression file::

    {"n": 2, "m": 3, "k": 1,
     "left":  [[[re, im], ...], ...],                  # k vectors of length n
     "right": [[[re, im], ...], ...]}                  # k vectors of length m
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, SchmidtStrataError, ZeroState
from .states import ZERO_TOL, PureState, TensorExpression

LOAD_NORM_TOL = 1e-9
RENORMALIZE_TOL = 1e-3


class StateFileError(SchmidtStrataError, ValueError):
    def __init__(self, path, message, line=None):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = str(path)
        self.line = line


def encode_complex(values) -> list:
    """Nested lists of [re, im] pairs mirroring the array shape."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [encode_complex(v) for v in arr]


def decode_complex(data, path="<data>") -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(path, f"malformed numeric data ({exc})") from exc
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise StateFileError(path, "complex numbers must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(path, exc.strerror or str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(path, exc.msg, exc.lineno) from exc


def _require(doc: dict, key: str, path):
    if not isinstance(doc, dict) or key not in doc:
        raise StateFileError(path, f"missing field {key!r}")
    return doc[key]


def load_state(path) -> tuple[PureState, list[str]]:
    """Read a state file; returns the state and any load warnings.

    Norms within 1e-9 of 1 are accepted, within 1e-3 renormalized with a
    warning, anything further off rejected.
    """
    doc = _read_json(path)
    n, m = int(_require(doc, "n", path)), int(_require(doc, "m", path))
    vec = decode_complex(_require(doc, "vec", path), path).ravel()
    if vec.size != n * m:
        raise DimensionMismatch(f"{path}: vector has {vec.size} entries, expected n*m = {n * m}")
    nrm = float(np.linalg.norm(vec))
    if nrm <= ZERO_TOL:
        raise ZeroState(f"{path}: state vector is zero")
    warnings = []
    if abs(nrm - 1.0) > RENORMALIZE_TOL:
        raise StateFileError(path, f"vector norm {nrm!r} is not 1")
    if abs(nrm - 1.0) > LOAD_NORM_TOL:
        warnings.append(f"{path}: norm {nrm!r} renormalized to 1")
    return PureState.from_vector(vec, n, m), warnings


def state_to_dict(state: PureState) -> dict:
    return {"n": state.n, "m": state.m, "vec": encode_complex(state.vec)}


def save_state(state: PureState, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=2) + "\n", encoding="utf-8")


def load_expression(path) -> TensorExpression:
    doc = _read_json(path)
    n, m, k = (int(_require(doc, key, path)) for key in ("n", "m", "k"))
    left = decode_complex(_require(doc, "left", path), path)
    right = decode_complex(_require(doc, "right", path), path)
    if left.shape != (k, n) or right.shape != (k, m):
        raise DimensionMismatch(
            f"{path}: expected {k} left vectors of length {n} and {k} right vectors of "
            f"length {m}, got shapes {left.shape} and {right.shape}"
        )
    return TensorExpression(left.T, right.T)


def expression_to_dict(expr: TensorExpression) -> dict:
    return {
        "n": expr.n,
        "m": expr.m,
        "k": expr.k,
        "left": encode_complex(expr.left.T),
        "right": encode_complex(expr.right.T),
    }


def save_expression(expr: TensorExpression, path) -> None:
    Path(path).write_text(json.dumps(expression_to_dict(expr), indent=2) + "\n", encoding="utf-8")
