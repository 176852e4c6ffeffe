"""Approximate minimum enclosing ball of balls (Badoiu-Clarkson iteration).

Starting from the center of the first ball, each iteration moves the current
center a ``1/(i+1)`` fraction of the way toward the farthest point of the
farthest ball. After ``l`` iterations the center is within ``r*/sqrt(l)`` of
the optimal center, so ``l = ceil(1/eps**2)`` iterations give a
``(1+eps)``-approximate radius.
"""

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.spatial.distance import pdist
from sklearn.base import BaseEstimator

from .conegeom import Ball

DEGENERATE_DISTANCE = 1e-300
LOWER_BOUND_MAX_SAMPLE = 1024
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class MebConfig:
    """Either ``epsilon`` or an explicit ``iterations`` count (the latter wins)."""

    epsilon: float | None = 1e-2
    iterations: int | None = None

    def __post_init__(self):
        if self.iterations is None:
            if self.epsilon is None or not (self.epsilon > 0 and math.isfinite(self.epsilon)):
                raise ValueError("epsilon must be a positive number when iterations is not given")
        elif int(self.iterations) < 1:
            raise ValueError("iterations must be >= 1")

    @property
    def n_iter(self):
        if self.iterations is not None:
            return int(self.iterations)
        return iterations_for_epsilon(self.epsilon)


@dataclass
class MebResult:
    center: np.ndarray
    radius: float
    iterations: int
    coreset: list = field(default_factory=list)
    certified_ratio: float = 1.0
    lower_bound: float = 0.0


def iterations_for_epsilon(epsilon):
    return max(1, math.ceil(1.0 / (epsilon * epsilon)))


def _as_balls(balls):
    if isinstance(balls, Ball):
        balls = [balls]
    balls = list(balls)
    if not balls:
        raise ValueError("need at least one ball")
    D = balls[0].dim
    for j, b in enumerate(balls):
        if b.dim != D:
            raise ValueError(f"ball {j} has dimension {b.dim}, expected {D}")
    centers = np.ascontiguousarray(np.stack([b.center for b in balls]))
    radii = np.array([b.radius for b in balls])
    return centers, radii


def farthest_distance(q, ball):
    """Largest distance from ``q`` to a point of ``ball``: ``||q - c|| + r``."""
    q = np.asarray(q, dtype=float)
    if q.shape != ball.center.shape:
        raise ValueError(f"dimension mismatch: {q.shape} vs {ball.center.shape}")
    return float(np.linalg.norm(q - ball.center)) + ball.radius


def farthest_point(q, ball):
    q = np.asarray(q, dtype=float)
    diff = ball.center - q
    dist = float(np.linalg.norm(diff))
    if dist <= DEGENERATE_DISTANCE:
        direction = np.zeros_like(q)
        direction[0] = 1.0
    else:
        direction = diff / dist
    return ball.center + ball.radius * direction


def bc_step(e, i, ball):
    """One update ``e + (F - e)/(i + 1)`` with ``F`` the farthest point of ``ball`` from ``e``.

    When ``e`` coincides with the ball center, the first coordinate axis is
    used as the direction to the farthest point.
    """
    if i < 1:
        raise ValueError("iteration index must be >= 1")
    e = np.asarray(e, dtype=float)
    return e + (farthest_point(e, ball) - e) / (i + 1)


@numba.njit(cache=True)
def _farthest(centers, radii, e, tie_tol):
    n, D = centers.shape
    dists = np.empty(n)
    best = -1.0
    for j in range(n):
        s = 0.0
        for k in range(D):
            diff = centers[j, k] - e[k]
            s += diff * diff
        dists[j] = np.sqrt(s) + radii[j]
        if dists[j] > best:
            best = dists[j]
    for j in range(n):
        if dists[j] >= best - tie_tol:
            return j, best
    return 0, best


@numba.njit(cache=True)
def _bc_iterate(centers, radii, n_iter, tie_tol):
    n, D = centers.shape
    e = centers[0].copy()
    picks = np.empty(n_iter, dtype=np.int64)
    for i in range(1, n_iter + 1):
        f, _ = _farthest(centers, radii, e, tie_tol)
        picks[i - 1] = f
        s = 0.0
        for k in range(D):
            diff = centers[f, k] - e[k]
            s += diff * diff
        dist = np.sqrt(s)
        step = 1.0 / (i + 1)
        if dist <= 1e-300:
            for k in range(D):
                far = centers[f, k] + (radii[f] if k == 0 else 0.0)
                e[k] = e[k] + (far - e[k]) * step
        else:
            scale = radii[f] / dist
            for k in range(D):
                far = centers[f, k] + scale * (centers[f, k] - e[k])
                e[k] = e[k] + (far - e[k]) * step
    last, radius = _farthest(centers, radii, e, tie_tol)
    return e, radius, picks, last


def tie_tolerance(centers, radii):
    """Distances closer than this to the maximum count as ties (lowest index wins).

    Exact ties are common (two-ball instances hit one at the second
    iteration), so an absolute slack well above rounding noise keeps the
    selection stable under rotations and translations of the input.
    """
    spread = np.max(np.linalg.norm(centers - centers[0], axis=1) + radii)
    scale = spread + np.max(np.abs(centers))
    return TIE_RTOL * float(scale)


def _first_occurrence_order(indices):
    _, first = np.unique(indices, return_index=True)
    return [int(indices[k]) for k in np.sort(first)]


def pairwise_lower_bound(centers, radii, keep=()):
    """Lower bound on the optimal enclosing radius.

    Every enclosing ball covers each single ball and each pair of balls, so
    ``max(max_i r_i, max_{i<j} (||c_i - c_j|| + r_i + r_j) / 2)`` never exceeds
    the optimum. Above 1024 balls the pairs are taken over a deterministic
    subsample that always contains the indices in ``keep``.
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    n = centers.shape[0]
    bound = float(np.max(radii))
    if n < 2:
        return bound
    if n > LOWER_BOUND_MAX_SAMPLE:
        chosen = list(dict.fromkeys(int(k) for k in keep))[:LOWER_BOUND_MAX_SAMPLE]
        taken = set(chosen)
        for k in np.linspace(0, n - 1, LOWER_BOUND_MAX_SAMPLE).astype(int):
            if len(chosen) >= LOWER_BOUND_MAX_SAMPLE:
                break
            if int(k) not in taken:
                chosen.append(int(k))
                taken.add(int(k))
        idx = np.array(sorted(chosen))
        centers, radii = centers[idx], radii[idx]
        n = idx.size
    iu, ju = np.triu_indices(n, k=1)
    pair = (pdist(centers) + radii[iu] + radii[ju]) / 2.0
    return max(bound, float(pair.max()))


def solve(balls, cfg=None):
    """Approximate minimum enclosing ball of a list of :class:`Ball`.

    The reported radius is the exact enclosing radius of the final center,
    ``max_i(||center - c_i|| + r_i)``, so the returned ball always covers the
    input. Ties in the farthest-ball search go to the lowest index.

    The core-set lists, in first-selection order, the starting ball (index
    0), every ball selected as farthest during the iterations, and the ball
    that attains the final radius. Solving again on exactly those balls (in
    increasing index order) takes the same farthest-ball decisions, so it
    reproduces the trajectory and the radius.
    """
    cfg = MebConfig() if cfg is None else cfg
    centers, radii = _as_balls(balls)
    return solve_arrays(centers, radii, cfg)


def solve_arrays(centers, radii, cfg):
    centers = np.ascontiguousarray(centers, dtype=float)
    radii = np.ascontiguousarray(radii, dtype=float)
    if centers.ndim != 2 or centers.shape[0] < 1:
        raise ValueError("centers must have shape (n, D) with n >= 1")
    if radii.shape != (centers.shape[0],):
        raise ValueError("radii must have one entry per center")
    if np.any(radii < 0) or not np.all(np.isfinite(radii)) or not np.all(np.isfinite(centers)):
        raise ValueError("radii must be finite and non-negative, centers finite")
    n = centers.shape[0]
    if n == 1:
        return MebResult(centers[0].copy(), float(radii[0]), 0, [0], 1.0, float(radii[0]))
    n_iter = cfg.n_iter
    e, radius, picks, last = _bc_iterate(centers, radii, n_iter, tie_tolerance(centers, radii))
    coreset = _first_occurrence_order(np.concatenate([[0], picks, [last]]))
    lb = pairwise_lower_bound(centers, radii, keep=coreset)
    if lb > 0:
        ratio = max(1.0, radius / lb)
    else:
        ratio = 1.0
    return MebResult(e, float(radius), n_iter, coreset, float(ratio), lb)


def exact_two_ball(b1, b2):
    """Closed-form minimum enclosing ball of two balls, returned as ``(center, radius)``."""
    if b1.dim != b2.dim:
        raise ValueError(f"dimension mismatch: {b1.dim} vs {b2.dim}")
    diff = b2.center - b1.center
    gap = float(np.linalg.norm(diff))
    if gap + b2.radius <= b1.radius:
        return b1.center.copy(), b1.radius
    if gap + b1.radius <= b2.radius:
        return b2.center.copy(), b2.radius
    radius = (gap + b1.radius + b2.radius) / 2.0
    # the boundary point of b1 farthest from b2 sits at c1 - r1 * u
    u = diff / gap
    center = b1.center + (radius - b1.radius) * u
    return center, radius


class MinimumEnclosingBall(BaseEstimator):
    """Estimator wrapper around :func:`solve`.

    Parameters
    ----------
    epsilon : float, default=1e-2
        Target relative accuracy; sets ``ceil(1/epsilon**2)`` iterations.
    n_iter : int or None
        Explicit iteration count overriding ``epsilon``.

    Attributes
    ----------
    center_, radius_, n_iter_, coreset_, certified_ratio_
    """

    def __init__(self, epsilon=1e-2, n_iter=None):
        self.epsilon = epsilon
        self.n_iter = n_iter

    def fit(self, X, y=None, radii=None):
        """Fit on ball centers ``X`` of shape (n, D); ``radii`` defaults to zeros (points)."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValueError(f"X must have shape (n, D), got {X.shape}")
        r = np.zeros(X.shape[0]) if radii is None else np.asarray(radii, dtype=float)
        res = solve_arrays(X, r, MebConfig(self.epsilon, self.n_iter))
        self.center_ = res.center
        self.radius_ = res.radius
        self.n_iter_ = res.iterations
        self.coreset_ = np.asarray(res.coreset)
        self.certified_ratio_ = res.certified_ratio
        return self
