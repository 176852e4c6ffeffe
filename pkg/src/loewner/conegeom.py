"""Dominance cones and their basis balls in the zero-trace subspace.

A symmetric matrix ``S`` with ``tr(S) >= 0`` is the apex of the cone of
matrices it dominates. Cutting that cone with the zero-trace hyperplane gives
a convex cross-section whose circumscribed ball has center
``S - tr(S)/d * I`` and radius ``tr(S) * sqrt(1 - 1/d)``. Balls are kept in
half-vectorized coordinates (see :mod:`loewner.symmat`).

Ball containment is implied by Loewner dominance in every dimension. The
converse only holds for d = 2, where the positive semi-definite cone is
circular; for d >= 3 ``ball_contains`` can accept pairs that ``dominates``
rejects.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_symmetric, check_symmetric_stack
from .symmat import mat_from_vec, mat_dim, vec_plus

TRACE_REL_TOL = 1e-12


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.ndim != 1:
            raise ValueError("ball center must be a vector")
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"ball radius must be finite and >= 0, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self):
        return self.center.shape[0]


@dataclass(frozen=True)
class NormalizationShift:
    """Per-diagonal-entry shift ``t``: the normalized matrices are ``S - t * I``."""

    t: float

    def apply(self, X):
        X = np.asarray(X, dtype=float)
        d = X.shape[-1]
        return X - self.t * np.eye(d)

    def undo(self, X):
        X = np.asarray(X, dtype=float)
        d = X.shape[-1]
        return X + self.t * np.eye(d)


def normalize_traces(X):
    """Shift every matrix by a common multiple of the identity so the minimum trace is 0.

    With ``t = min_i tr(S_i) / d`` and ``S_i' = S_i - t I`` one gets
    ``tr(S_i') = tr(S_i) - min_j tr(S_j) >= 0``. Dominance relations are
    unchanged by a common shift, so the supremum of the originals is the
    supremum of the shifted set plus ``t I``.

    Returns
    -------
    shifted : ndarray, shape (n, d, d)
    shift : NormalizationShift
    """
    A = check_symmetric_stack(X, min_count=1)
    d = A.shape[-1]
    shift = NormalizationShift(float(np.min(np.trace(A, axis1=1, axis2=2))) / d)
    return shift.apply(A), shift


def _radius_factor(d):
    return np.sqrt(1.0 - 1.0 / d)


def cone_to_balls(X):
    """Vectorized basis balls for a stack; returns ``(centers (n, D), radii (n,))``."""
    A = check_symmetric_stack(X)
    d = A.shape[-1]
    tr = np.trace(A, axis1=1, axis2=2)
    scale = np.maximum(1.0, np.linalg.norm(A, axis=(1, 2)))
    negative = tr < -TRACE_REL_TOL * scale
    if np.any(negative):
        i = int(np.flatnonzero(negative)[0])
        raise ValueError(f"matrix {i} has negative trace {tr[i]:.6g}; normalize traces first")
    tr = np.where(np.abs(tr) <= TRACE_REL_TOL * scale, 0.0, tr)
    sigma = A - (tr / d)[:, None, None] * np.eye(d)
    return vec_plus(sigma), tr * _radius_factor(d)


def cone_to_ball(S):
    """Basis ball of the dominance cone with apex ``S`` (requires ``tr(S) >= 0``)."""
    S = check_symmetric(S)
    centers, radii = cone_to_balls(S[np.newaxis])
    return Ball(centers[0], radii[0])


def ball_to_apex(ball, d=None):
    """Apex matrix of the dominance cone whose basis is ``ball``.

    Inverse of :func:`cone_to_ball`: ``sigma + r / (d * sqrt(1 - 1/d)) * I``.
    """
    if d is None:
        d = mat_dim(ball.dim)
    if d < 2:
        raise ValueError("ball_to_apex is undefined for d = 1 (the radius factor vanishes)")
    sigma = mat_from_vec(ball.center, d)
    return sigma + (ball.radius / (d * _radius_factor(d))) * np.eye(d)


def ball_contains(outer, inner, tol=0.0):
    """True when ``outer`` contains ``inner`` up to ``tol`` on the distance test."""
    if outer.dim != inner.dim:
        raise ValueError(f"dimension mismatch: {outer.dim} vs {inner.dim}")
    gap = float(np.linalg.norm(outer.center - inner.center))
    return gap <= outer.radius - inner.radius + tol
