"""Exception hierarchy shared by every module."""


class TernaryError(Exception):
    """Base class for all errors raised by ternquot."""


class ArgumentError(TernaryError, ValueError):
    """An argument violates a documented precondition."""


class StateError(TernaryError, RuntimeError):
    """An object is missing a property the operation depends on (e.g. associativity)."""


class StructuralError(TernaryError, AssertionError):
    """An internal consistency check failed.

    Raised when a fact that must hold by theory (uniqueness of inverses,
    agreement of equivalent normality conditions, a replayed theorem's
    conclusion under satisfied hypotheses) does not hold on a concrete
    instance.
    """


class ParseError(TernaryError, ValueError):
    """Instance text could not be read; ``line`` and ``column`` are 1-based."""

    kind = "parse error"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {self.kind}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ParseSyntaxError(ParseError):
    kind = "syntax error"


class ParseRangeError(ParseError):
    kind = "range error"


class AxiomViolation(ParseError):
    """Well-formed input describing a non-associative table or a non-topology."""

    kind = "axiom violation"
