"""Approximate Loewner supremum and infimum of a set of symmetric matrices."""

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_positive, check_symmetric_stack
from .conegeom import Ball, ball_to_apex, cone_to_balls, normalize_traces
from .exceptions import NotPositiveDefiniteError
from .minib import MebConfig, solve_arrays
from .symmat import inverse, min_eigenvalues

DOMINANCE_TOL = 1e-8
PD_REL_THRESHOLD = 1e-10


@dataclass
class SupremumResult:
    """Outcome of :func:`lowner_sup` / :func:`lowner_inf`.

    ``certified_trace_ratio`` bounds ``tr(result) / tr(optimum)`` for the
    trace-normalized inputs (minimum trace shifted to 0), where the bound is
    valid. ``certified_trace_ratio_raw`` is the same bound stated for the
    original traces, or NaN when the lower bound on the optimal trace is not
    positive there. For :func:`lowner_inf` both ratios refer to the supremum
    of the inverted matrices.
    """

    matrix: np.ndarray
    epsilon_requested: float | None
    certified_trace_ratio: float
    coreset_indices: list
    iterations: int
    certified_trace_ratio_raw: float = float("nan")
    trace_lower_bound: float = float("nan")
    shift: float = 0.0
    repair: float = 0.0
    min_margin: float = 0.0
    exact: bool = False
    extra: dict = field(default_factory=dict)


def _margins(candidate, X):
    """``lambda_min(candidate - X_i)`` and the scale ``max(1, ||candidate - X_i||_F)`` per input."""
    diff = candidate[np.newaxis] - X
    lam = min_eigenvalues(diff)
    scale = np.maximum(1.0, np.linalg.norm(diff, axis=(1, 2)))
    return lam, scale


def _dominating_input(X):
    """Index of an input that dominates all others at tol 0, or None."""
    traces = np.trace(X, axis1=1, axis2=2)
    diags = np.diagonal(X, axis1=1, axis2=2)
    # a dominating matrix has the largest trace and the largest diagonal entries
    for j in np.flatnonzero(traces == traces.max()):
        if np.any(diags[j] < diags.max(axis=0)):
            continue
        lam, _ = _margins(X[j], X)
        if np.all(lam >= 0.0):
            return int(j)
    return None


def _exact(X, j, epsilon):
    return SupremumResult(
        matrix=X[j].copy(),
        epsilon_requested=epsilon,
        certified_trace_ratio=1.0,
        certified_trace_ratio_raw=1.0,
        coreset_indices=[j],
        iterations=0,
        trace_lower_bound=float(np.trace(X[j])),
        exact=True,
    )


def lowner_sup(X, epsilon=1e-2, iterations=None):
    """Approximate Loewner supremum of symmetric matrices.

    Parameters
    ----------
    X : array_like, shape (n, d, d)
        Symmetric matrices, not necessarily positive semi-definite.
    epsilon : float, default=1e-2
        Target accuracy; the enclosing-ball solver runs ``ceil(1/epsilon**2)``
        iterations unless ``iterations`` is given.
    iterations : int, optional
        Explicit iteration count.

    Returns
    -------
    SupremumResult
        ``matrix`` dominates every input. If one input already dominates all
        the others it is returned unchanged.

    Notes
    -----
    The inputs are shifted by a common multiple of the identity so their
    minimum trace is zero, mapped to basis balls, enclosed by a ball, and the
    enclosing ball is mapped back to its apex. For d >= 3 ball enclosure is
    weaker than dominance, so the apex is checked against every input with
    the eigensolver and raised by ``deficit * I`` when some
    ``lambda_min(apex - S_i)`` is negative.
    """
    A = check_symmetric_stack(X, min_count=1)
    if iterations is None:
        epsilon = check_positive(epsilon, "epsilon")
    cfg = MebConfig(epsilon, iterations)
    n, d, _ = A.shape

    if d == 1:
        j = int(np.argmax(A[:, 0, 0]))
        return _exact(A, j, epsilon)
    j = _dominating_input(A)
    if j is not None:
        return _exact(A, j, epsilon)

    shifted, shift = normalize_traces(A)
    centers, radii = cone_to_balls(shifted)
    meb = solve_arrays(centers, radii, cfg)
    apex = shift.undo(ball_to_apex(Ball(meb.center, meb.radius), d))
    apex = 0.5 * (apex + apex.T)

    lam, _ = _margins(apex, A)
    repair = 0.0
    if lam.min() < 0.0:
        repair = -float(lam.min())
        apex = apex + repair * np.eye(d)
        lam, _ = _margins(apex, A)
        # rounding in the second eigen pass can leave a few ulps of deficit
        if lam.min() < 0.0:
            extra = -float(lam.min())
            apex = apex + extra * np.eye(d)
            repair += extra
            lam, _ = _margins(apex, A)

    factor = np.sqrt(1.0 - 1.0 / d)
    radius = meb.radius + repair * d * factor
    if meb.lower_bound > 0:
        ratio = max(1.0, radius / meb.lower_bound)
    else:
        ratio = 1.0
    trace_lb_shifted = meb.lower_bound / factor
    trace_lb = trace_lb_shifted + d * shift.t
    trace_lb = max(trace_lb, float(np.max(np.trace(A, axis1=1, axis2=2))))
    raw = float(np.trace(apex)) / trace_lb if trace_lb > 0 else float("nan")
    return SupremumResult(
        matrix=apex,
        epsilon_requested=epsilon,
        certified_trace_ratio=float(ratio),
        certified_trace_ratio_raw=max(1.0, raw) if np.isfinite(raw) else raw,
        coreset_indices=list(meb.coreset),
        iterations=meb.iterations,
        trace_lower_bound=float(trace_lb),
        shift=shift.t,
        repair=repair,
        min_margin=float(lam.min()),
        extra={"enclosing_radius": meb.radius, "radius_lower_bound": meb.lower_bound},
    )


def check_positive_definite(X):
    """Raise :class:`NotPositiveDefiniteError` naming the first non-PD matrix."""
    A = check_symmetric_stack(X, min_count=1)
    lam = min_eigenvalues(A)
    norms = np.linalg.norm(A, axis=(1, 2))
    bad = lam <= PD_REL_THRESHOLD * norms
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise NotPositiveDefiniteError(
            f"matrix {i} is not positive definite (smallest eigenvalue {lam[i]:.3e})",
            eigenvalue=float(lam[i]),
            index=i,
        )
    return A


def lowner_inf(X, epsilon=1e-2, iterations=None):
    """Approximate Loewner infimum of positive definite matrices.

    Computed as ``inverse(lowner_sup([inverse(S_i)]))``: inversion reverses
    the Loewner order, so the result is dominated by every input.
    """
    A = check_positive_definite(X)
    inverted = np.stack([inverse(S) for S in A])
    res = lowner_sup(inverted, epsilon=epsilon, iterations=iterations)
    res.matrix = inverse(res.matrix)
    res.trace_lower_bound = float("nan")
    return res


class _ExtremumBase(BaseEstimator):
    def __init__(self, epsilon=1e-2, n_iter=None):
        self.epsilon = epsilon
        self.n_iter = n_iter

    def _store(self, res):
        self.result_ = res
        self.coreset_ = np.asarray(res.coreset_indices)
        self.n_iter_ = res.iterations
        self.certified_trace_ratio_ = res.certified_trace_ratio


class LoewnerSupremum(_ExtremumBase):
    """Approximate Loewner-maximal matrix of the matrices passed to ``fit``.

    Attributes
    ----------
    supremum_ : ndarray of shape (d, d)
    coreset_ : ndarray of int
    n_iter_ : int
    certified_trace_ratio_ : float
    result_ : SupremumResult
    """

    def fit(self, X, y=None):
        res = lowner_sup(X, epsilon=self.epsilon, iterations=self.n_iter)
        self.supremum_ = res.matrix
        self._store(res)
        return self


class LoewnerInfimum(_ExtremumBase):
    """Approximate Loewner-minimal matrix of positive definite matrices.

    Attributes
    ----------
    infimum_ : ndarray of shape (d, d)
    coreset_, n_iter_, certified_trace_ratio_, result_
        As for :class:`LoewnerSupremum`, computed on the inverted inputs.
    """

    def fit(self, X, y=None):
        res = lowner_inf(X, epsilon=self.epsilon, iterations=self.n_iter)
        self.infimum_ = res.matrix
        self._store(res)
        return self
