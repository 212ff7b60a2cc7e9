"""Exception types shared across the package."""


class IntegrationError(RuntimeError):
    """Adaptive time stepping failed (e.g. step-size underflow)."""


class AccuracyError(RuntimeError):
    """A quadrature or matrix evaluation missed its accuracy target."""


class FitError(RuntimeError):
    """A root find or least-squares fit did not converge."""
