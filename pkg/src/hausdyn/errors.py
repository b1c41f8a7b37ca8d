"""Exception hierarchy for hausdyn."""


class HausdynError(Exception):
    """Base class for all errors raised by the package."""


class InvalidCalibration(HausdynError, ValueError):
    """A calibration, tax policy or derived coefficient violates its invariants."""


class InconsistentInputs(HausdynError, ValueError):
    """Coefficients passed alongside a calibration were not computed from it."""


class SolverError(HausdynError):
    """Saddle-path selection failed.

    ``roots`` holds the closed-loop roots of the (stock, price) block that
    were examined when the failure was detected.
    """

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


class NoStableRoot(SolverError):
    pass


class Indeterminacy(SolverError):
    pass


class NoConvergence(HausdynError):
    """The extended-path oracle did not settle when the truncation was doubled."""


class ConfigError(HausdynError, ValueError):
    """Raised for malformed or invalid run configuration documents."""


class ConfigParseError(ConfigError):
    pass


class ConfigValidationError(ConfigError):
    pass


class OutputError(HausdynError, OSError):
    """Writing a result file failed; ``path`` names the target."""

    def __init__(self, path, cause):
        super().__init__(f"cannot write {path}: {cause}")
        self.path = path
