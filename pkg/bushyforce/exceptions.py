"""
Custom exceptions for bushyforce.
"""


class BushyForceError(Exception):
    """Base exception for bushyforce."""

    pass


class RepresentationError(BushyForceError):
    """Raised when an input lies outside the representable class."""

    pass


class RankOverflow(BushyForceError):
    """Raised when a rank recursion exceeds its depth budget."""

    pass


class NotBig(BushyForceError):
    """Raised when a witness is requested for a node that is not big."""

    pass


class IncompatibleStems(BushyForceError):
    """Raised when two trees have incomparable stems."""

    pass


class StemMismatch(BushyForceError):
    """Raised when an inner witness is grafted onto the wrong leaf."""

    pass


class NotCentered(BushyForceError):
    """Raised when conditions with different keys are merged."""

    pass


class NotAnExtension(BushyForceError):
    """Raised when a requested extension is not a possible extension."""

    pass


class NotAFusionSequence(BushyForceError):
    """Raised when a tree sequence does not preserve its finite skeletons."""

    pass


class TaskInapplicable(BushyForceError):
    """Raised when a density task does not apply to a condition's forcing."""

    pass


class DivergenceForceable(BushyForceError):
    """Raised when some extension forces a functional to diverge."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(message)
        self.position = position


class CertificateFailure(BushyForceError):
    """Raised when a certificate cannot be produced or fails to replay."""

    pass


class MalformedTrace(BushyForceError):
    """Raised when a trace violates its size or length constraints."""

    pass


class ScenarioParseError(BushyForceError):
    """Raised when scenario, certificate or expression text cannot be parsed."""

    pass
