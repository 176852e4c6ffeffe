"""Transformer exposing the isometric half-vectorization to sklearn pipelines."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_symmetric_stack
from .symmat import mat_from_vec, vec_plus


class HalfVectorizer(TransformerMixin, BaseEstimator):
    """Map (n, d, d) symmetric matrices to (n, d(d+1)/2) feature vectors.

    Euclidean distances between the outputs equal Frobenius distances
    between the matrices, so any vector-space estimator downstream sees the
    same geometry.
    """

    def fit(self, X, y=None):
        self.n_dim_ = check_symmetric_stack(X).shape[-1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        A = check_symmetric_stack(X)
        if A.shape[-1] != self.n_dim_:
            raise ValueError(f"expected {self.n_dim_}x{self.n_dim_} matrices, got {A.shape[1:]}")
        return vec_plus(A)

    def inverse_transform(self, X):
        check_is_fitted(self)
        return mat_from_vec(np.atleast_2d(X), self.n_dim_)
