"""Exception hierarchy shared by every stage of the pipeline."""


class HsosError(Exception):
    """Base class for all library errors."""


class DomainError(HsosError, ValueError):
    """Input outside an operation's domain (non-Hermitian poly, bad modulus, ...)."""


class SizeError(HsosError, ValueError):
    """A degree or dimension exceeded the configured cap."""


class NotPsdError(HsosError):
    """A positivity precondition was violated."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class NoConvergenceError(HsosError):
    """An iterative solver ran out of iterations."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InconsistentError(HsosError):
    """Numerical state that contradicts the theory; signals a bug or a tolerance failure."""


class ParseError(HsosError, ValueError):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
