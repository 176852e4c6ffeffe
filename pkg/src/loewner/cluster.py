"""Greedy farthest-first k-center clustering of symmetric matrices."""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_symmetric_stack
from .symmat import vec_plus


@dataclass
class ClusterResult:
    center_indices: list
    assignment: np.ndarray  # input index of the nearest chosen center
    cost: float


def _nearest(points, centers):
    dist = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
    labels = np.argmin(dist, axis=1)
    return labels, dist[np.arange(points.shape[0]), labels]


def kcenter(X, k):
    """Gonzalez farthest-first traversal under the Frobenius distance.

    The first center is matrix 0; each further center is the matrix farthest
    from the centers chosen so far (lowest index on ties). The resulting
    covering radius is at most twice the optimal k-center cost.
    """
    A = check_symmetric_stack(X, min_count=1)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n={n}, got {k}")
    V = vec_plus(A)
    chosen = [0]
    nearest = np.linalg.norm(V - V[0], axis=1)
    for _ in range(k - 1):
        candidates = nearest.copy()
        candidates[chosen] = -1.0
        f = int(np.argmax(candidates))
        chosen.append(f)
        nearest = np.minimum(nearest, np.linalg.norm(V - V[f], axis=1))
    labels, dist = _nearest(V, V[chosen])
    return ClusterResult(chosen, np.asarray(chosen)[labels], float(dist.max()))


class KCenterClustering(ClusterMixin, BaseEstimator):
    """k-center clustering of symmetric matrices.

    Attributes
    ----------
    center_indices_ : ndarray of int
        Indices (into the training set) of the chosen centers.
    cluster_centers_ : ndarray of shape (k, d, d)
    labels_ : ndarray of int
        Position in ``center_indices_`` of each sample's nearest center.
    cost_ : float
        Largest distance from a sample to its center.
    """

    def __init__(self, n_clusters=2):
        self.n_clusters = n_clusters

    def fit(self, X, y=None):
        A = check_symmetric_stack(X)
        res = kcenter(A, self.n_clusters)
        self.center_indices_ = np.asarray(res.center_indices)
        self.cluster_centers_ = A[self.center_indices_]
        lookup = {int(c): pos for pos, c in enumerate(res.center_indices)}
        self.labels_ = np.array([lookup[int(a)] for a in res.assignment])
        self.cost_ = res.cost
        return self

    def predict(self, X):
        check_is_fitted(self)
        A = check_symmetric_stack(X)
        labels, _ = _nearest(vec_plus(A), vec_plus(self.cluster_centers_))
        return labels
