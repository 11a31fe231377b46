class WimanLabError(ValueError):
    """Base class for every error the laboratory raises on purpose."""


class ZeroSeriesError(WimanLabError):
    pass


class DomainError(WimanLabError):
    """An argument lies outside the domain where a formula is defined (iterated logs, radii)."""


class InadequateTruncationError(WimanLabError):
    def __init__(self, message: str, required_truncation: int):
        super().__init__(message)
        self.required_truncation = required_truncation


class CoefficientSystemError(WimanLabError):
    pass


class FitError(WimanLabError):
    pass


class ManifestError(WimanLabError):
    pass
