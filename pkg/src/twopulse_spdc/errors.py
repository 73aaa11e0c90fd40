"""Exception hierarchy shared by every module of the package."""


class SPDCError(Exception):
    """Base class for all errors raised by twopulse_spdc."""


class ConfigError(SPDCError, ValueError):
    """Invalid, incomplete or unparseable experiment configuration."""


class WavelengthRangeError(SPDCError, ValueError):
    """Wavelength outside the validity range of a dispersion model."""


class PhaseMatchingError(SPDCError):
    """No phase-matching solution exists for the requested geometry."""


class KinematicError(SPDCError):
    """Mode outside the propagating (non-evanescent) kinematic range."""


class NoStationaryPointError(SPDCError):
    """The phase mismatch has no sign change inside the search bracket."""


class UndefinedCriterionError(SPDCError, ValueError):
    """A criterion was requested for a configuration where it has no meaning."""


class NotEnoughFringesError(SPDCError):
    """Too few extrema in the analysis window to define a visibility."""


class QuadratureError(SPDCError):
    """Numerical integration failed to reach the requested tolerance.

    The best relative agreement reached between successive refinements is
    kept in ``achieved``.
    """

    def __init__(self, message, achieved=float("nan")):
        super().__init__(message)
        self.achieved = achieved


class OracleError(QuadratureError):
    """The brute-force reference integral did not converge."""
