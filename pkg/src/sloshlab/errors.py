"""Exception types shared across the package."""


class SloshlabError(Exception):
    """Base class for package errors."""


class ParametrizationError(SloshlabError, ValueError):
    """The requested configuration cannot be represented by the
    single-valued height description (e.g. a tangent contact angle asked
    of the graph-form solver)."""


class MeniscusConvergenceError(SloshlabError, RuntimeError):
    """Static meniscus Newton iteration failed to converge; carries the
    last residual norm."""

    def __init__(self, message: str, residual_norm: float):
        super().__init__(f"{message} (last residual {residual_norm:.3e})")
        self.residual_norm = residual_norm


class PotentialSolveError(SloshlabError, RuntimeError):
    """The mixed Laplace boundary solve failed or is too ill-conditioned
    to trust."""


class StabilityAbort(SloshlabError, RuntimeError):
    """Time integration aborted: wave breaking, curvature blow-up, or
    unforced energy growth beyond tolerance."""

    def __init__(self, message: str, time: float):
        super().__init__(f"{message} at t = {time:.6g}")
        self.time = time


class NumericalLimitError(SloshlabError, RuntimeError):
    """A regularized limit failed to converge under step refinement."""
