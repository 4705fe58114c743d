"""Exception types raised across the package."""


class NotPrimePower(ValueError):
    """A hash family range (or field size) is not a prime power."""

    def __init__(self, size):
        self.size = size
        super().__init__(f"size {size} is not a prime power")


class IterationCapExceeded(RuntimeError):
    """A randomized search ran past its hard iteration cap."""


class BitSourceDefective(RuntimeError):
    """Rejection sampling kept failing; the bit source is not behaving uniformly."""


class SizeExceedsCap(ValueError):
    """An exhaustive enumeration was asked to visit more states than allowed."""


class NonConvergence(ArithmeticError):
    """The eigensolver did not reach its tolerance within the sweep budget."""


class MissingBitSource(ValueError):
    """A randomized construction was requested without a source of bits."""


class ProExprSyntaxError(ValueError):
    """Malformed pseudorandom-object expression."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")
