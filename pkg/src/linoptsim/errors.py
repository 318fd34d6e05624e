"""Exception types raised across the package."""


class LinoptError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(LinoptError, ValueError):
    pass


class InvalidOpError(LinoptError, ValueError):
    pass


class InvalidUnitaryError(LinoptError, ValueError):
    pass


class TooLargeError(LinoptError, ValueError):
    pass


class PhotonNumberMismatchError(LinoptError, ValueError):
    pass


class InvalidInputError(LinoptError, ValueError):
    pass


class InvalidDistributionError(LinoptError, ValueError):
    pass


class EmptyPostselectionError(LinoptError, ValueError):
    pass


class CutoffTooSmallError(LinoptError, RuntimeError):
    """Raised when Fock-space truncation discards more norm than allowed."""

    def __init__(self, message: str, leakage: float):
        super().__init__(f"{message} (measured leakage {leakage:.3e})")
        self.leakage = leakage
