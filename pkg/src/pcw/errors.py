"""Exception types shared across the package."""


class PcwError(Exception):
    pass


class MalformedWord(PcwError, ValueError):
    pass


class BudgetExceeded(PcwError, RuntimeError):
    pass


class GroupMismatch(PcwError, ValueError):
    pass


class BadRange(PcwError, ValueError):
    pass


class PresentationError(PcwError, ValueError):
    """Raised by the presentation file parser; carries the offending line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class BadDimension(PcwError, ValueError):
    pass


class NonUnimodular(PcwError, ValueError):
    pass


class NonCommutingUnits(PcwError, ValueError):
    pass


class RepMismatch(PcwError, ValueError):
    pass


class InvalidEndomorphism(PcwError, ValueError):
    pass


class NotCyclicallyReduced(PcwError, ValueError):
    pass


class MetricNotVerified(PcwError, ValueError):
    pass


class GenerationTimeout(PcwError, RuntimeError):
    pass


class DegenerateKey(PcwError, RuntimeError):
    pass


class NoCommutingPair(PcwError, ValueError):
    pass


class NonCommutingSubgroups(PcwError, ValueError):
    pass


class SolverExhausted(PcwError, RuntimeError):
    pass


class NoCertifiedElement(PcwError, ValueError):
    pass


class FactorReuse(PcwError, RuntimeError):
    pass


class InsufficientShares(PcwError, ValueError):
    pass


class InconsistentPresentation(PcwError, ValueError):
    pass


class SingularSystem(PcwError, RuntimeError):
    pass


class UnknownPlatform(PcwError, ValueError):
    pass
