"""Plot-ready geometry: ellipsoids of PD matrices and basis balls of a matrix set."""

import numpy as np

from ._validation import check_positive, check_symmetric, check_symmetric_stack
from .conegeom import cone_to_balls, normalize_traces
from .exceptions import NotPositiveDefiniteError
from .minib import MebConfig, solve_arrays
from .symmat import eigen


def ellipsoid(S, rho=1.0):
    """Semi-axes of ``{x : x^T S^{-1} x = rho}`` for a PD matrix with d <= 3.

    Returns a dict with ``semi_radii`` (largest first, ``sqrt(rho * lambda)``)
    and ``axes``, whose columns are the matching unit directions.
    """
    S = check_symmetric(S)
    rho = check_positive(rho, "rho")
    d = S.shape[0]
    if d > 3:
        raise ValueError(f"ellipsoids are exported for d <= 3 only, got d={d}")
    w, V = eigen(S)
    if w[0] <= 0:
        raise NotPositiveDefiniteError(
            f"ellipsoid needs a positive definite matrix (smallest eigenvalue {w[0]:.3e})",
            eigenvalue=float(w[0]),
        )
    order = np.arange(d)[::-1]
    return {"semi_radii": np.sqrt(rho * w[order]).tolist(), "axes": V[:, order].tolist()}


def basis_balls(X, epsilon=1e-2, iterations=None):
    """Basis balls of the trace-normalized inputs and their enclosing ball."""
    A = check_symmetric_stack(X)
    d = A.shape[-1]
    if d < 2:
        raise ValueError("basis balls need d >= 2")
    shifted, shift = normalize_traces(A)
    centers, radii = cone_to_balls(shifted)
    meb = solve_arrays(centers, radii, MebConfig(epsilon, iterations))
    return {
        "d": d,
        "shift": shift.t,
        "balls": [{"center": c.tolist(), "radius": float(r)} for c, r in zip(centers, radii)],
        "enclosing": {
            "center": meb.center.tolist(),
            "radius": meb.radius,
            "iterations": meb.iterations,
            "coreset": meb.coreset,
            "certified_ratio": meb.certified_ratio,
        },
    }
