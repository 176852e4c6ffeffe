"""Dilation and erosion of matrix fields (e.g. DT-MRI tensor volumes).

A field is an array of shape ``(*grid, d, d)``. Dilation replaces every cell
by the approximate Loewner supremum of the cells under a structuring element
centered on it; erosion uses the infimum and needs positive definite cells.
Windows are clipped at the grid border.
"""

import itertools
import re

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_field
from .extremal import check_positive_definite, lowner_inf, lowner_sup
from .symmat import min_eigenvalues


def parse_window(spec, ndim=None):
    """Parse ``"box:3x3"`` / ``"cross:3x3x3"`` into a list of integer offsets.

    Sizes must be odd so the window has a center. ``"box:1x1"`` is the
    identity window.
    """
    m = re.fullmatch(r"\s*(box|cross):(\d+(?:x\d+)*)\s*", spec)
    if not m:
        raise ValueError(f"bad window spec {spec!r}; expected e.g. 'box:3x3'")
    kind, dims = m.group(1), [int(s) for s in m.group(2).split("x")]
    if ndim is not None and len(dims) != ndim:
        raise ValueError(f"window {spec!r} has {len(dims)} axes, field has {ndim}")
    if any(s < 1 or s % 2 == 0 for s in dims):
        raise ValueError(f"window sizes must be positive and odd, got {dims}")
    ranges = [range(-(s // 2), s // 2 + 1) for s in dims]
    offsets = [tuple(o) for o in itertools.product(*ranges)]
    if kind == "cross":
        offsets = [o for o in offsets if sum(1 for x in o if x != 0) <= 1]
    return offsets


def _check_window(window, ndim):
    offsets = [tuple(int(x) for x in o) for o in window]
    if not offsets:
        raise ValueError("structuring element is empty")
    for o in offsets:
        if len(o) != ndim:
            raise ValueError(f"offset {o} does not match the {ndim}-dimensional grid")
    return offsets


def _apply(field, window, reducer):
    grid = field.shape[:-2]
    offsets = _check_window(window, len(grid))
    out = np.empty_like(field)
    for pos in np.ndindex(*grid):
        cells = []
        for o in offsets:
            q = tuple(p + dp for p, dp in zip(pos, o))
            if all(0 <= x < s for x, s in zip(q, grid)):
                cells.append(field[q])
        if not cells:
            raise ValueError(f"window covers no cell at position {pos}")
        out[pos] = reducer(np.stack(cells))
    return out


def field_dilate(field, window, epsilon=1e-2):
    """Cell-wise approximate Loewner supremum over a structuring element."""
    F = check_field(field)
    return _apply(F, window, lambda cells: lowner_sup(cells, epsilon).matrix)


def _erode_cells(cells, epsilon):
    # a cell dominated by all the others is the exact infimum; skip the inversions
    traces = np.trace(cells, axis1=1, axis2=2)
    for j in np.flatnonzero(traces == traces.min()):
        if np.all(min_eigenvalues(cells - cells[j]) >= 0.0):
            return cells[j]
    return lowner_inf(cells, epsilon).matrix


def field_erode(field, window, epsilon=1e-2):
    """Cell-wise approximate Loewner infimum; every cell must be positive definite."""
    F = check_field(field)
    d = F.shape[-1]
    check_positive_definite(F.reshape(-1, d, d))
    return _apply(F, window, lambda cells: _erode_cells(cells, epsilon))


class _FieldMorphology(TransformerMixin, BaseEstimator):
    def __init__(self, window="box:3x3", epsilon=1e-2):
        self.window = window
        self.epsilon = epsilon

    def fit(self, X, y=None):
        return self

    def _offsets(self, F):
        if isinstance(self.window, str):
            return parse_window(self.window, F.ndim - 2)
        return self.window


class TensorFieldDilation(_FieldMorphology):
    """Stateless transformer wrapping :func:`field_dilate`."""

    def transform(self, X):
        F = check_field(X)
        return field_dilate(F, self._offsets(F), self.epsilon)


class TensorFieldErosion(_FieldMorphology):
    """Stateless transformer wrapping :func:`field_erode`."""

    def transform(self, X):
        F = check_field(X)
        return field_erode(F, self._offsets(F), self.epsilon)
