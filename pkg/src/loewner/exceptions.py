"""Exception types raised by the numerical routines."""

from numpy.linalg import LinAlgError


class ConvergenceError(LinAlgError):
    """The Jacobi eigensolver did not reach its off-diagonal threshold."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularMatrixError(LinAlgError):
    """A matrix is too close to singular to be inverted reliably."""

    def __init__(self, message, eigenvalue=None, index=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
        self.index = index


class NotPositiveDefiniteError(SingularMatrixError):
    """An operation that needs positive definite input received something else."""
