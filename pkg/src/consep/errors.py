"""Exception hierarchy shared by every module."""


class ConsepError(Exception):
    """Base class for all errors raised by the package."""


class WordParseError(ConsepError, ValueError):
    def __init__(self, text, position, message="unexpected character"):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class InvalidGraph(ConsepError, ValueError):
    pass


class NotFiniteIndex(ConsepError):
    """A labeled graph is missing an edge for some (vertex, label, direction)."""


class TrivialH2(ConsepError, ValueError):
    pass


class HypothesisViolated(ConsepError, ValueError):
    pass


class NonOrientableUnsupported(ConsepError, ValueError):
    pass


class SignatureMismatch(ConsepError, ValueError):
    pass


class DivisibilityViolated(HypothesisViolated):
    """A modulus does not satisfy the divisibility a plan needs."""


class NotMultipleOfM0(HypothesisViolated):
    pass


class SlotMismatch(ConsepError, ValueError):
    pass


class NoClosingPattern(ConsepError):
    pass


class RegularityViolated(ConsepError, ValueError):
    pass


class SphereOrProjectivePlane(ConsepError, ValueError):
    pass


class NotACover(ConsepError, ValueError):
    pass


class VerificationFailed(ConsepError):
    """A construction failed its own post-condition check."""
