import itertools

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from conftest import random_spd
from loewner.cluster import KCenterClustering, kcenter
from loewner.vectorize import HalfVectorizer


def brute_force_cost(X, k):
    n = len(X)
    D = np.linalg.norm(X[:, None] - X[None], axis=(2, 3))
    return min(D[:, list(c)].min(axis=1).max() for c in itertools.combinations(range(n), k))


def test_k_equals_n(rng):
    X = random_spd(rng, 2, 6)
    res = kcenter(X, 6)
    assert res.cost == 0.0
    assert sorted(res.center_indices) == list(range(6))
    np.testing.assert_array_equal(res.assignment, np.arange(6))


def test_k_equals_n_with_duplicates(rng):
    X = random_spd(rng, 2, 3)
    X = np.concatenate([X, X[:1]])
    res = kcenter(X, 4)
    assert len(set(res.center_indices)) == 4 and res.cost == 0.0


def test_k_one(rng):
    X = random_spd(rng, 3, 9)
    res = kcenter(X, 1)
    assert res.center_indices == [0]
    assert res.cost == pytest.approx(np.linalg.norm(X - X[0], axis=(1, 2)).max(), rel=1e-14)


def test_two_approximation(rng):
    for _ in range(30):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, min(3, n) + 1))
        X = random_spd(rng, 2, n)
        res = kcenter(X, k)
        assert res.cost <= 2 * brute_force_cost(X, k) + 1e-12


def test_assignment_is_nearest(rng):
    X = random_spd(rng, 3, 20)
    res = kcenter(X, 4)
    D = np.linalg.norm(X[:, None] - X[res.center_indices][None], axis=(2, 3))
    np.testing.assert_allclose(np.linalg.norm(X - X[res.assignment], axis=(1, 2)), D.min(axis=1), atol=1e-12)
    assert res.cost == pytest.approx(D.min(axis=1).max(), rel=1e-12)


def test_k_out_of_range(rng):
    X = random_spd(rng, 2, 3)
    for k in (0, 4):
        with pytest.raises(ValueError):
            kcenter(X, k)


def test_estimator(rng):
    X = random_spd(rng, 2, 15)
    est = KCenterClustering(n_clusters=3).fit(X)
    assert est.cluster_centers_.shape == (3, 2, 2)
    np.testing.assert_array_equal(est.predict(X), est.labels_)
    np.testing.assert_array_equal(est.fit_predict(X), est.labels_)
    assert clone(est).get_params() == {"n_clusters": 3}


def test_half_vectorizer_pipeline(rng):
    from sklearn.cluster import KMeans

    X = random_spd(rng, 3, 12)
    hv = HalfVectorizer().fit(X)
    V = hv.transform(X)
    assert V.shape == (12, 6)
    np.testing.assert_allclose(hv.inverse_transform(V), X, atol=1e-15)
    pipe = make_pipeline(HalfVectorizer(), KMeans(n_clusters=2, n_init=2, random_state=0)).fit(X)
    assert pipe.predict(X).shape == (12,)
