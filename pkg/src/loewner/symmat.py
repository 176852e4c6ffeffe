"""Dense symmetric-matrix kernel.

Symmetric matrices are plain ``(d, d)`` float arrays (stacks are ``(n, d, d)``).
The half-vectorization used everywhere in this package is the
Frobenius-isometric one: the diagonal first, then the strictly upper
triangle in row-major order, each off-diagonal entry scaled by sqrt(2)::

    [s11, s22, ..., sdd, r*s12, r*s13, ..., r*s1d, r*s23, ..., r*s(d-1)d],  r = sqrt(2)

so that ``norm(vec_plus(S)) == norm(S, 'fro')``.
"""

from typing import NamedTuple

import numba
import numpy as np

from ._validation import check_same_dim, check_symmetric, check_symmetric_stack
from .exceptions import ConvergenceError, SingularMatrixError

SQRT2 = np.sqrt(2.0)

JACOBI_REL_THRESHOLD = 1e-14
JACOBI_MAX_SWEEPS = 30
INVERSE_REL_THRESHOLD = 1e-12


class EigenDecomp(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def vec_dim(d):
    """Length of the half-vectorization of a d x d matrix."""
    return d * (d + 1) // 2


def mat_dim(D):
    """Inverse of :func:`vec_dim`; raises if ``D`` is not a triangular number."""
    d = int(round((np.sqrt(8 * D + 1) - 1) / 2))
    if d < 1 or vec_dim(d) != D:
        raise ValueError(f"length {D} is not d(d+1)/2 for any integer d >= 1")
    return d


def _offdiag_indices(d):
    return np.triu_indices(d, k=1)


def vec_plus(S):
    """Frobenius-isometric half-vectorization.

    Parameters
    ----------
    S : array_like, shape (d, d) or (n, d, d)

    Returns
    -------
    ndarray, shape (D,) or (n, D) with D = d(d+1)/2
    """
    A = np.asarray(S, dtype=float)
    single = A.ndim == 2
    A = check_symmetric_stack(A, name="S")
    d = A.shape[-1]
    iu, ju = _offdiag_indices(d)
    diag = np.diagonal(A, axis1=1, axis2=2)
    off = A[:, iu, ju] * SQRT2
    out = np.concatenate([diag, off], axis=1)
    return out[0] if single else out


def mat_from_vec(v, d=None):
    """Inverse of :func:`vec_plus`.

    ``d`` is inferred from the vector length when omitted; when given it must
    agree with the length.
    """
    V = np.asarray(v, dtype=float)
    single = V.ndim == 1
    if single:
        V = V[np.newaxis]
    if V.ndim != 2:
        raise ValueError(f"expected a vector or a stack of vectors, got shape {np.shape(v)}")
    D = V.shape[1]
    if d is None:
        d = mat_dim(D)
    elif vec_dim(d) != D:
        raise ValueError(f"vector length {D} does not match d={d} (expected {vec_dim(d)})")
    iu, ju = _offdiag_indices(d)
    out = np.zeros((V.shape[0], d, d))
    idx = np.arange(d)
    out[:, idx, idx] = V[:, :d]
    off = V[:, d:] / SQRT2
    out[:, iu, ju] = off
    out[:, ju, iu] = off
    return out[0] if single else out


@numba.njit(cache=True)
def _jacobi(S, rel_threshold, max_sweeps):
    d = S.shape[0]
    A = S.copy()
    V = np.eye(d)
    norm = 0.0
    for i in range(d):
        for j in range(d):
            norm += A[i, j] * A[i, j]
    norm = np.sqrt(norm)
    threshold = rel_threshold * norm
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(d):
            for j in range(d):
                if i != j:
                    off += A[i, j] * A[i, j]
        off = np.sqrt(off)
        if off <= threshold:
            return np.diag(A).copy(), V, off, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(d):
                    if k != p and k != q:
                        akp = A[k, p]
                        akq = A[k, q]
                        nkp = c * akp - s * akq
                        nkq = s * akp + c * akq
                        A[k, p] = nkp
                        A[p, k] = nkp
                        A[k, q] = nkq
                        A[q, k] = nkq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(d):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
    return np.diag(A).copy(), V, off, max_sweeps, False


@numba.njit(cache=True)
def _jacobi_min_batch(A, rel_threshold, max_sweeps):
    n = A.shape[0]
    out = np.empty(n)
    ok = np.ones(n, dtype=np.bool_)
    for i in range(n):
        w, _, _, _, converged = _jacobi(A[i], rel_threshold, max_sweeps)
        out[i] = w.min()
        ok[i] = converged
    return out, ok


def eigen(S):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row order and stop once the
    off-diagonal Frobenius norm is at most ``1e-14 * norm(S, 'fro')``.

    Returns
    -------
    EigenDecomp
        Ascending eigenvalues and the matching orthonormal eigenvector columns.

    Raises
    ------
    ConvergenceError
        If 30 sweeps are not enough; ``residual`` carries the remaining
        off-diagonal norm.
    """
    A = check_symmetric(S)
    w, V, off, _, converged = _jacobi(A, JACOBI_REL_THRESHOLD, JACOBI_MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {off:.3e})",
            residual=off,
        )
    order = np.argsort(w, kind="stable")
    return EigenDecomp(w[order], V[:, order])


def eigvalsh(S):
    return eigen(S).eigenvalues


def min_eigenvalues(X):
    """Smallest eigenvalue of every matrix in a stack of shape (n, d, d)."""
    A = check_symmetric_stack(X)
    w, ok = _jacobi_min_batch(A, JACOBI_REL_THRESHOLD, JACOBI_MAX_SWEEPS)
    if not ok.all():
        bad = int(np.flatnonzero(~ok)[0])
        raise ConvergenceError(f"Jacobi eigensolver did not converge for matrix {bad}")
    return w


def dominance_margin(P, Q):
    """Smallest eigenvalue of ``P - Q`` together with the scale ``max(1, ||P - Q||_F)``."""
    P = check_symmetric(P, "P")
    Q = check_symmetric(Q, "Q")
    check_same_dim(P, Q)
    diff = P - Q
    return float(eigen(diff).eigenvalues[0]), max(1.0, float(np.linalg.norm(diff)))


def dominates(P, Q, tol=0.0):
    """Loewner test ``P >= Q``, i.e. ``P - Q`` positive semi-definite.

    Accepts when ``lambda_min(P - Q) >= -tol * max(1, ||P - Q||_F)``.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    lam, scale = dominance_margin(P, Q)
    return lam >= -tol * scale


def inverse(S):
    """Inverse via the eigendecomposition, refusing near-singular input.

    Raises
    ------
    SingularMatrixError
        When ``|lambda|_min <= 1e-12 * max(1, ||S||_F)``.
    """
    A = check_symmetric(S)
    w, V = eigen(A)
    smallest = float(np.min(np.abs(w)))
    if smallest <= INVERSE_REL_THRESHOLD * max(1.0, float(np.linalg.norm(A))):
        raise SingularMatrixError(
            f"matrix is numerically singular: smallest |eigenvalue| = {smallest:.3e}",
            eigenvalue=smallest,
        )
    inv = (V / w) @ V.T
    return 0.5 * (inv + inv.T)


def trace(S):
    return float(np.trace(check_symmetric(S)))


def frob_inner(X, Y):
    """Frobenius inner product ``tr(X^T Y)`` as the entrywise sum of products."""
    X = check_symmetric(X, "X")
    Y = check_symmetric(Y, "Y")
    check_same_dim(X, Y)
    return float(np.sum(X * Y))
