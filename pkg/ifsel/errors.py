class DomainError(ValueError):
    """Argument outside the domain of a formula (e.g. non-positive distance)."""


class StructuralError(ValueError):
    """Mismatched lengths, unknown names or malformed groupings."""


class ValidationError(ValueError):
    """Value-type invariant violated."""


class ConfigError(ValidationError):
    """Config file invariant violated."""


class NoCandidateError(RuntimeError):
    """No reachable interface is left to rank."""


class CalibrationError(RuntimeError):
    """Calibration target cannot be bracketed."""
