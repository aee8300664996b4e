"""Exception types raised across the package."""


class MarstrandError(Exception):
    """Base class for all package errors."""


class LengthMismatch(MarstrandError, ValueError):
    pass


class UndeterminedBits(MarstrandError, ArithmeticError):
    """The requested digits cannot be decided from the available enclosure."""


class Degenerate(MarstrandError, ValueError):
    pass


class PrecisionExhausted(MarstrandError, ArithmeticError):
    """Precision escalation hit its cap before the answer was certified."""


class NoRoom(MarstrandError, ValueError):
    pass


class ScheduleOverflow(MarstrandError, ValueError):
    pass


class BlockOverflow(MarstrandError, RuntimeError):
    """An extension step did not fit in its block budget."""


class DecodeMismatch(MarstrandError):
    """Decoded payload differs from the expected one.

    ``index`` is the first differing bit position inside the stage payload.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"decoded payload differs at bit {index}")
