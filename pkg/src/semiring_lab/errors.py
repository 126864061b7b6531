"""Exception hierarchy shared by every layer of the library."""


class SemiringLabError(Exception):
    """Base class for all library errors."""


class MalformedTable(SemiringLabError, ValueError):
    pass


class AxiomViolation(SemiringLabError):
    """A table failed an axiom; ``witness`` holds the offending elements."""

    def __init__(self, axiom, witness=(), detail=""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"axiom {axiom!r} violated at {self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class OwnerMismatch(SemiringLabError, ValueError):
    pass


class BaseMismatch(SemiringLabError, ValueError):
    pass


class NotAnIdeal(SemiringLabError, ValueError):
    pass


class NotASubsemimodule(SemiringLabError, ValueError):
    pass


class NotMaximal(SemiringLabError, ValueError):
    pass


class NotPrime(SemiringLabError, ValueError):
    pass


class NotMultClosed(SemiringLabError, ValueError):
    pass


class PreconditionUnmet(SemiringLabError):
    pass


class SizeBoundExceeded(SemiringLabError):
    pass


class WellDefinednessError(SemiringLabError):
    """An induced operation on a quotient depends on the chosen representative."""


class UnknownTheorem(SemiringLabError, KeyError):
    pass


class UnknownBase(SemiringLabError):
    pass


class ParseError(SemiringLabError):
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
