import numpy as np
import pytest

from conftest import random_instance, random_symmetric
from loewner.conegeom import Ball, ball_contains, ball_to_apex, cone_to_ball, normalize_traces
from loewner.symmat import dominates, mat_from_vec


def test_normalize_two_diagonals():
    shifted, shift = normalize_traces([np.diag([1.0, 2.0]), np.diag([2.0, 1.0])])
    assert shift.t == 1.5
    np.testing.assert_array_equal(shifted, [np.diag([-0.5, 0.5]), np.diag([0.5, -0.5])])


def test_normalize_already_zero_min_trace():
    X = np.array([np.diag([0.0, 0.0]), np.diag([1.0, 2.0])])
    shifted, shift = normalize_traces(X)
    assert shift.t == 0.0
    np.testing.assert_array_equal(shifted, X)


def test_normalize_singleton_trace_zero(rng):
    shifted, _ = normalize_traces(random_symmetric(rng, 4)[None])
    assert abs(np.trace(shifted[0])) <= 1e-14


def test_normalize_empty():
    with pytest.raises(ValueError):
        normalize_traces(np.zeros((0, 2, 2)))


def test_normalize_traces_nonnegative_and_undo(rng):
    for d in (2, 3, 5):
        X = random_instance(rng, 20, d) + 7.0 * np.eye(d)
        shifted, shift = normalize_traces(X)
        tr = np.trace(shifted, axis1=1, axis2=2)
        assert tr.min() >= -1e-12 * max(1.0, abs(shift.t))
        assert abs(tr.min()) <= 1e-12 * max(1.0, abs(shift.t) * d)
        np.testing.assert_allclose(shift.undo(shifted), X, rtol=0, atol=4 * np.finfo(float).eps * (1 + abs(shift.t)))


def test_cone_to_ball_identity():
    b = cone_to_ball(np.eye(2))
    np.testing.assert_array_equal(b.center, np.zeros(3))
    assert b.radius == pytest.approx(np.sqrt(2.0), rel=1e-15)


def test_cone_to_ball_zero_trace():
    S = np.array([[1.0, 0.3], [0.3, -1.0]])
    b = cone_to_ball(S)
    assert b.radius == 0.0
    np.testing.assert_allclose(b.center, [1.0, -1.0, 0.3 * np.sqrt(2)], rtol=1e-15)


def test_cone_to_ball_diag12():
    b = cone_to_ball(np.diag([1.0, 2.0]))
    np.testing.assert_allclose(b.center, [-0.5, 0.5, 0.0], atol=1e-15)
    assert b.radius == pytest.approx(2.1213203435596424, rel=1e-15)


def test_cone_to_ball_negative_trace():
    with pytest.raises(ValueError, match="negative trace"):
        cone_to_ball(-np.eye(2))


def test_ball_to_apex_examples():
    np.testing.assert_allclose(ball_to_apex(Ball(np.zeros(3), np.sqrt(2.0))), np.eye(2), atol=1e-15)
    b = cone_to_ball(np.diag([1.0, 2.0]))
    np.testing.assert_allclose(ball_to_apex(b), np.diag([1.0, 2.0]), atol=1e-15)
    c = np.array([0.25, -0.25, 0.1])
    np.testing.assert_array_equal(ball_to_apex(Ball(c, 0.0)), mat_from_vec(c))


def test_ball_to_apex_rejects_d1():
    with pytest.raises(ValueError):
        ball_to_apex(Ball(np.zeros(1), 1.0))


def test_round_trip_random(rng):
    for d in (2, 3, 4, 8):
        for _ in range(50):
            S = random_symmetric(rng, d)
            S = S + (abs(np.trace(S)) / d + rng.uniform(0, 2)) * np.eye(d)
            back = ball_to_apex(cone_to_ball(S))
            assert np.linalg.norm(back - S) <= 1e-12 * max(1.0, np.linalg.norm(S))


def test_centers_lie_in_zero_trace_subspace(rng):
    for d in (2, 3, 6):
        shifted, _ = normalize_traces(random_instance(rng, 30, d))
        for S in shifted:
            b = cone_to_ball(S)
            assert abs(np.trace(mat_from_vec(b.center))) <= 1e-10 * max(1.0, np.linalg.norm(b.center))


def test_ball_contains_identical():
    b = Ball(np.array([1.0, 2.0, 3.0]), 0.5)
    assert ball_contains(b, b, 0.0)


def test_ball_contains_footnote_pair():
    (P, Q), _ = normalize_traces([np.diag([1.0, 1.0]), np.diag([-1.0, 1.0])])
    assert dominates(P, Q, 1e-10)
    assert ball_contains(cone_to_ball(P), cone_to_ball(Q), 1e-10)


def test_ball_contains_dimension_mismatch():
    with pytest.raises(ValueError):
        ball_contains(Ball(np.zeros(3), 1.0), Ball(np.zeros(6), 1.0))


def _pair(rng, d):
    Q = random_symmetric(rng, d)
    U = np.linalg.qr(rng.standard_normal((d, d)))[0]
    P = Q + U @ np.diag(rng.standard_normal(d) + rng.uniform(0, 2.5)) @ U.T
    (P, Q), _ = normalize_traces([P, Q])
    return P, Q


def test_containment_equivalence_d2(rng):
    both = {True: 0, False: 0}
    for _ in range(300):
        P, Q = _pair(rng, 2)
        dom = dominates(P, Q, 1e-9)
        assert ball_contains(cone_to_ball(P), cone_to_ball(Q), 1e-9) == dom
        both[dom] += 1
    assert both[True] > 30 and both[False] > 30


@pytest.mark.parametrize("d", [3, 5])
def test_dominance_implies_containment(rng, d):
    for _ in range(300):
        P, Q = _pair(rng, d)
        if dominates(P, Q, 0.0):
            assert ball_contains(cone_to_ball(P), cone_to_ball(Q), 1e-9)


def test_containment_does_not_imply_dominance_d3():
    # basis balls are circumscribed: for d >= 3 a non-PSD difference can still fit
    Q = np.zeros((3, 3))
    P = np.diag([-0.1, 1.0, 1.0])
    assert ball_contains(cone_to_ball(P), cone_to_ball(Q), 0.0)
    assert not dominates(P, Q, 0.0)
