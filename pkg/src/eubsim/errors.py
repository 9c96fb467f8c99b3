"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition (non-Hermitian, out of range, non-X form)."""


class InvalidStateError(ValueError):
    """Matrix is not an acceptable density operator (negative weight beyond tolerance)."""


class InvalidEnvelopeError(ValueError):
    """Decay envelope with |G|^2 > 1; the map would not be completely positive."""


class IntegrationError(RuntimeError):
    """A numerical oracle failed its step-halving convergence check."""


class ConfigError(ValueError):
    """Sweep configuration violates its invariants."""


class SweepNumericalError(RuntimeError):
    """Numerical failure at a specific (delta, t) grid point of a sweep."""

    def __init__(self, delta: float, t: float, cause: Exception):
        super().__init__(f"numerical failure at delta={delta:g}, gamma_t={t:g}: {cause}")
        self.delta = delta
        self.t = t
        self.cause = cause
