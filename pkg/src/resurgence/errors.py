"""Exception hierarchy shared by every module."""


class ResurgenceError(Exception):
    """Base class for all library errors."""


class DimensionError(ResurgenceError, ValueError):
    """Exponent vectors or ideals live in different ambient rings."""


class UndefinedValueError(ResurgenceError, ValueError):
    """An invariant is undefined for the given input (e.g. alpha of the zero ideal)."""


class ResourceLimitError(ResurgenceError):
    """A configured resource cap (generator count, box volume, window size) was exceeded."""


class UnsupportedDimensionError(ResourceLimitError):
    """Facet enumeration was requested above the supported ambient dimension."""


class PreconditionError(ResurgenceError, ValueError):
    """A documented precondition of an operation does not hold."""


class NotInSymbolicPowerError(PreconditionError):
    """decompose() was handed a monomial outside I(mZ)."""


class CharacteristicError(ResurgenceError, ValueError):
    """The prime field is too small for the requested degrees or multiplicities."""


class SeedError(ResurgenceError):
    """Pseudo-random construction stayed degenerate after all reseeding attempts."""


class ParseError(ResurgenceError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
