"""
Exceptions raised by the palindromic-pairs tool. Everything derives from ValueError so callers
that only care about "bad input" can keep catching that.
"""


class PalinpairError(ValueError):
    pass


class InvalidDigitError(PalinpairError):
    pass


class EmptyInputError(PalinpairError):
    pass


class BaseRangeError(PalinpairError):
    pass


class BaseMismatchError(PalinpairError):
    def __init__(self, left: int, right: int) -> None:
        super().__init__("Base mismatch: {left} vs {right}".format(left=left, right=right))
        self.left = left
        self.right = right


class PreconditionError(PalinpairError):
    pass


class ParameterRangeError(PalinpairError):
    pass


class ConstructionError(PalinpairError):
    """A generated value failed re-verification. Points at a bug, never at bad input."""
    pass


class DigestMismatchError(PalinpairError):
    pass


class CheckpointMismatchError(PalinpairError):
    pass


class UnknownScanKindError(PalinpairError):
    pass


class UnknownSequenceError(PalinpairError):
    pass


class UnknownFamilyError(PalinpairError):
    pass


class BFileParseError(PalinpairError):
    def __init__(self, line_number: int, line: str) -> None:
        super().__init__("Malformed b-file line {number}: {line!r}".format(number=line_number, line=line))
        self.line_number = line_number
