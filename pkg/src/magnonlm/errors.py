"""Exception types raised by the simulator."""


class ParameterError(ValueError):
    """A physical parameter is outside its allowed domain."""


class StabilityError(ArithmeticError):
    """The drift matrix has an eigenvalue with non-negative real part."""

    def __init__(self, max_real_eig, message=None):
        self.max_real_eig = float(max_real_eig)
        super().__init__(
            message or f"drift matrix is unstable (max real eigenvalue {self.max_real_eig:.6g})"
        )


class SingularSolveError(ArithmeticError):
    """The vectorized Lyapunov system is numerically singular."""


class EigenSolverError(ArithmeticError):
    """The eigenvalue iteration failed to converge."""


class NonPhysicalStateError(ValueError):
    """A covariance matrix violates the uncertainty relation beyond tolerance."""


class NoConvergenceError(RuntimeError):
    """Time integration reached its horizon without becoming stationary."""

    def __init__(self, residual, message=None):
        self.residual = float(residual)
        super().__init__(message or f"covariance flow not stationary (residual {self.residual:.3g})")


class AllUnstableError(RuntimeError):
    """No grid point of a sweep admits a steady state."""
