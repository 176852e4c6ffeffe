import numpy as np
import pytest

from conftest import random_spd
from loewner.exceptions import NotPositiveDefiniteError
from loewner.morphology import TensorFieldDilation, TensorFieldErosion, field_dilate, field_erode, parse_window
from loewner.symmat import dominates


def test_parse_window():
    assert parse_window("box:1x1") == [(0, 0)]
    assert len(parse_window("box:3x3")) == 9
    assert sorted(parse_window("cross:3x3")) == [(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)]
    assert len(parse_window("box:3x3x3", ndim=3)) == 27
    for bad in ("box:2x2", "disk:3", "box:3x3x3"):
        with pytest.raises(ValueError):
            parse_window(bad, ndim=2)


def test_identity_window(rng):
    F = random_spd(rng, 3, 12).reshape(3, 4, 3, 3)
    np.testing.assert_array_equal(field_dilate(F, [(0, 0)]), F)
    np.testing.assert_array_equal(field_erode(F, [(0, 0)]), F)


def test_constant_field(rng):
    P = random_spd(rng, 3)
    F = np.broadcast_to(P, (4, 4, 3, 3)).copy()
    np.testing.assert_array_equal(field_dilate(F, parse_window("box:3x3")), F)
    out = field_erode(F, parse_window("box:3x3"))
    np.testing.assert_allclose(out, F, rtol=1e-9)


def test_single_large_cell():
    F = np.broadcast_to(np.eye(2), (3, 3, 2, 2)).copy()
    F[1, 1] = 10 * np.eye(2)
    out = field_dilate(F, parse_window("box:3x3"), epsilon=0.05)
    sup_all = 10 * np.eye(2)
    for pos in np.ndindex(3, 3):
        assert dominates(sup_all, out[pos], 1e-8)
        assert dominates(out[pos], 10 * np.eye(2), 1e-8)
    eroded = field_erode(F, parse_window("box:3x3"), epsilon=0.05)
    for pos in np.ndindex(3, 3):
        assert dominates(F[pos], eroded[pos], 1e-7)


def test_border_clipping_and_dominance(rng):
    F = random_spd(rng, 2, 20).reshape(4, 5, 2, 2)
    out = field_dilate(F, parse_window("cross:3x3"), epsilon=0.1)
    for i, j in np.ndindex(4, 5):
        for di, dj in parse_window("cross:3x3"):
            p, q = i + di, j + dj
            if 0 <= p < 4 and 0 <= q < 5:
                assert dominates(out[i, j], F[p, q], 1e-8)


def test_3d_field(rng):
    F = random_spd(rng, 3, 8).reshape(2, 2, 2, 3, 3)
    out = TensorFieldDilation(window="box:3x3x3", epsilon=0.1).fit_transform(F)
    for pos in np.ndindex(2, 2, 2):
        for S in F.reshape(-1, 3, 3):
            assert dominates(out[pos], S, 1e-8)


def test_errors(rng):
    F = random_spd(rng, 2, 4).reshape(2, 2, 2, 2)
    with pytest.raises(ValueError):
        field_dilate(F, [])
    F[0, 0] = np.diag([1.0, -1.0])
    with pytest.raises(NotPositiveDefiniteError):
        TensorFieldErosion(window="box:3x3").transform(F)
