"""Exception types shared across the package."""


class OGSError(ValueError):
    """Base class for every error raised by this package."""


class CapExceeded(OGSError):
    """A size cap was exceeded; the caller should use the arithmetic path."""

    def __init__(self, size, cap, what="group"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} size {size} exceeds cap {cap}")


class ExprError(OGSError):
    """Problem with a group expression at a given byte offset."""

    def __init__(self, message, offset):
        self.offset = offset
        self.message = message
        super().__init__(f"{message} (at byte {offset})")


class ExprSyntaxError(ExprError):
    def __init__(self, offset, expected, found=None):
        self.expected = expected
        self.found = found
        got = "end of input" if found is None else repr(found)
        super().__init__(f"expected {expected}, found {got}", offset)


class DomainError(ExprError):
    pass


class NotSymmetric(OGSError):
    pass


class NotOddPrime(OGSError):
    pass


class BadK(OGSError):
    pass


class UnknownClaim(OGSError):
    pass


class BadParams(OGSError):
    pass
