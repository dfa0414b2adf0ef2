"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by strongirr."""


class InvalidInput(LatticeError, ValueError):
    pass


class CycleDetected(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class SizeLimit(LatticeError):
    pass


class NotPrime(LatticeError, ValueError):
    pass


class DoesNotDivide(LatticeError, ValueError):
    pass


class NotGenerating(LatticeError):
    pass


class EmptyInput(LatticeError, ValueError):
    pass


class NotStronglyIrreducible(LatticeError):
    pass


class GroupoidError(LatticeError):
    pass


class NotMonotone(GroupoidError):
    pass


class NotAssociative(GroupoidError):
    pass


class NotSubMeet(GroupoidError):
    pass


class SpectrumNotSI(LatticeError):
    pass


class SpectrumNotSH(LatticeError):
    pass


class NotModular(LatticeError):
    pass


class NoneFound(LatticeError):
    pass


class ShapeMismatch(LatticeError):
    pass


class HypothesesFail(LatticeError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("hypotheses failed: " + ", ".join(self.failed))


class PreconditionFail(LatticeError):
    pass


class NotSimple(LatticeError, ValueError):
    pass


class ParseError(LatticeError, ValueError):
    pass


class VerificationError(LatticeError):
    """A property that must always hold was found violated."""


class EmptySpectrum(UserWarning):
    """The chosen spectrum has no points; the topology is the trivial one on the empty set."""
