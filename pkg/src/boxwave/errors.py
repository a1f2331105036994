"""Exception types shared across the package."""


class BoxwaveError(Exception):
    """Base class for errors raised by this package."""


class NormalizationError(BoxwaveError, ValueError):
    """A state or profile is not normalized to 1 on its domain."""

    def __init__(self, message, norm=None):
        super().__init__(message)
        self.norm = norm


class TruncationError(BoxwaveError, ValueError):
    """A basis truncation left more weight behind than allowed."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class QuadratureConvergenceError(BoxwaveError, RuntimeError):
    """Panel refinement did not reduce the quadrature delta below target."""


class SpecFormatError(BoxwaveError, ValueError):
    """A state-spec document is malformed; carries line/key context."""

    def __init__(self, message, line_no=None, key=None):
        super().__init__(message)
        self.line_no = line_no
        self.key = key
