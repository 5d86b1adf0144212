"""Exception hierarchy."""


class HFConeError(Exception):
    """Base class for every error raised by hfcone."""


class InvalidComplex(HFConeError, ValueError):
    pass


class NotChainMap(HFConeError, ValueError):
    pass


class MissingInvolution(HFConeError, ValueError):
    pass


class NotKnotLike(HFConeError, ValueError):
    """The vertical complex does not have one-dimensional homology."""


class EpsilonUndetermined(HFConeError, ValueError):
    pass


class WindowTooSmall(HFConeError, ValueError):
    pass


class IndexOutsideTruncation(HFConeError, IndexError):
    pass


class ParityError(HFConeError, ValueError):
    pass


class InvalidCoefficient(HFConeError, ValueError):
    pass


class InvalidSlope(HFConeError, ValueError):
    pass


class BennequinViolation(HFConeError, ValueError):
    pass


class OutOfRange(HFConeError, ValueError):
    pass


class InconsistentInput(HFConeError, ValueError):
    pass


class BadCoefficient(HFConeError, ValueError):
    pass


class BudgetExceeded(HFConeError, RuntimeError):
    pass


class EmptySteps(HFConeError, ValueError):
    pass


class ParseError(HFConeError, ValueError):
    pass


class ValidationError(InvalidComplex):
    """A parsed complex failed :func:`hfcone.cfk.validate`."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class DecisionMismatch(HFConeError, RuntimeError):
    """The decision procedure and the direct cone computation disagree."""
