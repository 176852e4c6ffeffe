"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np

SYMMETRY_RTOL = 1e-9


def _asymmetry(A):
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    return float(np.max(np.abs(A - np.swapaxes(A, -1, -2)))) / scale if A.size else 0.0


def check_symmetric(S, name="S", rtol=SYMMETRY_RTOL):
    """Return ``S`` as an exactly symmetric float array of shape (d, d).

    Raises ``ValueError`` for non-square, non-finite, or visibly asymmetric
    input. Rounding-level asymmetry is removed by averaging with the
    transpose, which yields a bit-exact symmetric result.
    """
    A = np.asarray(S, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"{name} must be a square (d, d) matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf")
    if _asymmetry(A) > rtol:
        raise ValueError(f"{name} is not symmetric (relative asymmetry {_asymmetry(A):.3g})")
    return 0.5 * (A + A.T)


def check_symmetric_stack(X, name="X", rtol=SYMMETRY_RTOL, min_count=1):
    """Validate a collection of symmetric matrices, returning shape (n, d, d).

    A single (d, d) matrix is promoted to a stack of one.
    """
    A = np.asarray(X, dtype=float)
    if A.ndim == 2:
        A = A[np.newaxis]
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError(f"{name} must have shape (n, d, d), got {A.shape}")
    if A.shape[0] < min_count:
        raise ValueError(f"{name} must contain at least {min_count} matrix(es)")
    if A.shape[1] < 1:
        raise ValueError(f"{name} has zero-dimensional matrices")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf")
    asym = _asymmetry(A)
    if asym > rtol:
        raise ValueError(f"{name} contains non-symmetric matrices (relative asymmetry {asym:.3g})")
    return 0.5 * (A + np.swapaxes(A, -1, -2))


def check_same_dim(P, Q):
    if P.shape != Q.shape:
        raise ValueError(f"dimension mismatch: {P.shape} vs {Q.shape}")


def check_field(field, name="field"):
    """Validate a matrix field of shape (*grid, d, d) with at least one grid axis."""
    A = np.asarray(field, dtype=float)
    if A.ndim < 3 or A.shape[-1] != A.shape[-2]:
        raise ValueError(f"{name} must have shape (*grid, d, d), got {A.shape}")
    if A.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf")
    if _asymmetry(A) > SYMMETRY_RTOL:
        raise ValueError(f"{name} contains non-symmetric cells")
    return 0.5 * (A + np.swapaxes(A, -1, -2))


def check_positive(value, name):
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)
