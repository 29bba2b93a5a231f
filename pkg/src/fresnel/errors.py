"""Exception types shared across the toolkit."""


class FresnelError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FresnelError):
    """Input outside the mathematical domain (e.g. xi = 0)."""


class CapabilityError(FresnelError):
    """Requested operation exceeds what the configuration supports."""


class HypothesisViolationError(FresnelError):
    """A structural hypothesis (positivity, ellipticity) fails on the grid."""


class DataError(FresnelError):
    """Non-finite or otherwise unusable sampled data."""


class AccuracyError(FresnelError):
    """Quadrature refinement failed to reach the requested target.

    Carries the last two estimates so callers can inspect the stall.
    """

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class PatchRadiusError(FresnelError):
    """Local graph construction failed within the requested radius."""


class DistinctnessError(FresnelError):
    """Characteristic roots collide below the gap tolerance."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TrackingError(FresnelError):
    """Root tracking detected an order swap mid-integration."""


class IntegrationError(FresnelError):
    """Per-frequency ODE integration failed."""


class ResolutionError(FresnelError):
    """Grid too coarse for the requested decomposition."""


class FitError(FresnelError):
    """Degenerate data handed to the power-law fitter."""


class UsageError(FresnelError):
    """Operation called with empty or contradictory arguments."""


class InconclusiveReportError(FresnelError):
    """A contact report with unresolved orders cannot drive predictions."""
