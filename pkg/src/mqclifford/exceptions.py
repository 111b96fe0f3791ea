"""Exception types raised across the package."""


class SingularMatrixError(ValueError):
    """A GF(2) matrix that had to be invertible was not."""


class NonSymmetricXiError(ValueError):
    """An interaction matrix for a multiqubit gate is not symmetric."""


class ParseError(ValueError):
    """Malformed circuit or matrix text."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class XiNotSymmetricError(ParseError, NonSymmetricXiError):
    pass


class QubitOutOfRangeError(ParseError, IndexError):
    pass


class NonLinearGateError(ValueError):
    """A circuit expected to hold only CNOTs contains another gate."""


class SymplecticMismatchError(ValueError):
    """Two Clifford operators differ in their symplectic matrix."""


class DegenerateFitError(ValueError):
    pass


class TooManyQubitsError(ValueError):
    pass


class TooLargeError(ValueError):
    pass
