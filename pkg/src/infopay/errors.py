"""Exception types shared across the package."""


class InfopayError(Exception):
    """Base class for all package errors."""


class InputError(InfopayError):
    """Invalid argument or violated construction invariant.

    The message names the invariant that failed and, where helpful, the
    offending component (distribution name, type row, signal label).
    """


class OrderingError(InfopayError):
    """Raised when an operation requires two signal structures to be
    informativeness-ordered and no garbling kernel exists."""


class ParseError(InfopayError):
    """Instance-file syntax or reference error, with line diagnostics."""
