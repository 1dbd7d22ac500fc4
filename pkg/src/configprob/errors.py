"""Exception types raised by configprob."""


class ConfigProbError(ValueError):
    """Base class for all validation and domain errors."""


class NegativeDegree(ConfigProbError):
    pass


class OddStubTotal(ConfigProbError):
    pass


class LengthMismatch(ConfigProbError):
    pass


class UnbalancedStubs(ConfigProbError):
    pass


class InvalidSpec(ConfigProbError):
    pass


class SameVertex(ConfigProbError):
    pass


class VertexOutOfRange(ConfigProbError, IndexError):
    pass


class TooLarge(ConfigProbError):
    """Instance exceeds the exhaustive-enumeration cap."""
