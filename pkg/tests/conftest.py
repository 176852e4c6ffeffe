import numpy as np
import pytest


def random_symmetric(rng, d, n=None, scale=1.0):
    shape = (d, d) if n is None else (n, d, d)
    G = rng.standard_normal(shape) * scale
    return 0.5 * (G + np.swapaxes(G, -1, -2))


def random_spd(rng, d, n=None, floor=0.1):
    shape = (d, d) if n is None else (n, d, d)
    G = rng.standard_normal(shape)
    return G @ np.swapaxes(G, -1, -2) / d + floor * np.eye(d)


def random_orthogonal(rng, d):
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return Q * np.sign(np.diag(R))


def random_instance(rng, n, d):
    """Mixed definite / indefinite matrix set used by the property suites."""
    kind = rng.integers(3)
    if kind == 0:
        return random_symmetric(rng, d, n)
    if kind == 1:
        return random_spd(rng, d, n)
    return random_symmetric(rng, d, n) + rng.uniform(-3, 3) * np.eye(d)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
