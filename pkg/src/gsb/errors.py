"""Exception hierarchy shared by every gsb module."""

from __future__ import annotations


class GSBError(Exception):
    """Base class; ``code`` is the machine-readable tag used in reports."""

    code = "gsb_error"


class DomainError(GSBError, ValueError):
    code = "domain_error"


class EmptyPolynomialError(GSBError, ValueError):
    code = "empty_polynomial"


class OrientationError(GSBError, ValueError):
    """A rule whose right-hand side is not strictly below its left-hand side."""

    code = "orientation_error"


class NonTerminationError(GSBError, RuntimeError):
    """Reduction exceeded its step budget."""

    code = "non_termination_suspected"


class InconsistentPresentationError(GSBError, ArithmeticError):
    """Completion derived a nonzero constant, i.e. 1 lies in the ideal."""

    code = "inconsistent_presentation"


class ResourceError(GSBError, RuntimeError):
    code = "resource_limit"


class UnsupportedKindError(GSBError, TypeError):
    code = "unsupported_kind"


class ParseError(GSBError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)
