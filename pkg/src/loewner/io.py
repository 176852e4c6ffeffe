"""JSON file formats for matrix sets and matrix fields.

Matrix set::

    {"d": 2, "matrices": [[1, 0, 0, 2], [2, 0, 0, 1]]}

Matrix field::

    {"d": 2, "shape": [2, 3], "cells": [[...d*d entries...], ...]}

Matrices are stored as full row-major ``d*d`` lists (nested ``d x d`` lists
are accepted on input). Field cells are listed in row-major grid order.
Matrices are symmetrized on load by averaging with their transpose; a
warning is logged when the asymmetry exceeds 1e-9 relative.
"""

import json
import logging
import math

import numpy as np

logger = logging.getLogger(__name__)

ASYMMETRY_WARN = 1e-9


class FileFormatError(ValueError):
    pass


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc


def write_json(path, payload):
    text = dumps(payload)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def dumps(payload):
    return json.dumps(payload, indent=2, allow_nan=True)


def _get_dim(doc, path):
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FileFormatError(f"{path}: 'd' must be a positive integer")
    return d


def _matrices(raw, count, d, what):
    try:
        A = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{what}: entries must be numbers") from exc
    if A.size != count * d * d:
        raise FileFormatError(f"{what}: expected {count} matrices of {d * d} entries, got {A.size} values")
    A = A.reshape(count, d, d)
    if not np.all(np.isfinite(A)):
        raise FileFormatError(f"{what}: entries must be finite")
    return symmetrize(A, what)


def symmetrize(A, what="matrices"):
    """Average with the transpose, logging a warning for visible asymmetry."""
    A = np.asarray(A, dtype=float)
    T = np.swapaxes(A, -1, -2)
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    asym = float(np.max(np.abs(A - T))) / scale if A.size else 0.0
    if asym > ASYMMETRY_WARN:
        logger.warning("%s: asymmetric input (relative asymmetry %.3g) symmetrized by averaging", what, asym)
    return 0.5 * (A + T)


def load_matrix_set(path):
    """Read a matrix-set file into an array of shape (n, d, d)."""
    doc = _read_json(path)
    if not isinstance(doc, dict) or "matrices" not in doc:
        raise FileFormatError(f"{path}: expected an object with 'd' and 'matrices'")
    d = _get_dim(doc, path)
    mats = doc["matrices"]
    if not isinstance(mats, list) or not mats:
        raise FileFormatError(f"{path}: 'matrices' must be a non-empty list")
    return _matrices(mats, len(mats), d, str(path))


def matrix_set_doc(X):
    X = np.asarray(X, dtype=float)
    return {"d": int(X.shape[-1]), "matrices": [m.ravel().tolist() for m in X]}


def save_matrix_set(path, X):
    write_json(path, matrix_set_doc(X))


def load_field(path):
    """Read a matrix-field file into an array of shape (*shape, d, d)."""
    doc = _read_json(path)
    if not isinstance(doc, dict) or "cells" not in doc or "shape" not in doc:
        raise FileFormatError(f"{path}: expected an object with 'd', 'shape' and 'cells'")
    d = _get_dim(doc, path)
    shape = doc["shape"]
    if not isinstance(shape, list) or not shape or not all(isinstance(s, int) and s > 0 for s in shape):
        raise FileFormatError(f"{path}: 'shape' must be a non-empty list of positive integers")
    count = math.prod(shape)
    cells = _matrices(doc["cells"], count, d, str(path))
    return cells.reshape(*shape, d, d)


def field_doc(F):
    F = np.asarray(F, dtype=float)
    d = int(F.shape[-1])
    return {
        "d": d,
        "shape": [int(s) for s in F.shape[:-2]],
        "cells": [c.ravel().tolist() for c in F.reshape(-1, d, d)],
    }


def save_field(path, F):
    write_json(path, field_doc(F))


def load_candidate(path):
    """Read a single matrix: a ``{"matrix": ...}`` document or a one-matrix set file."""
    doc = _read_json(path)
    if isinstance(doc, dict) and "matrix" in doc:
        A = np.asarray(doc["matrix"], dtype=float)
        d = doc.get("d")
        if d is None:
            d = int(round(math.sqrt(A.size)))
        if not isinstance(d, int) or d < 1 or d * d != A.size:
            raise FileFormatError(f"{path}: 'matrix' is not a square matrix")
        return _matrices(A, 1, d, str(path))[0]
    X = load_matrix_set(path)
    if X.shape[0] != 1:
        raise FileFormatError(f"{path}: candidate file must hold exactly one matrix")
    return X[0]
