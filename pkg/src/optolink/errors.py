"""Exception hierarchy shared by all optolink modules."""


class OptoLinkError(Exception):
    """Base class for every error raised by the package."""


# modular arithmetic / transforms
class NotPrime(OptoLinkError, ValueError):
    pass


class NotPowerOfTwo(OptoLinkError, ValueError):
    pass


class IncompatibleModulus(OptoLinkError, ValueError):
    pass


class LengthMismatch(OptoLinkError, ValueError):
    pass


class CoefficientOutOfRange(OptoLinkError, ValueError):
    pass


class ContextMismatch(OptoLinkError, ValueError):
    pass


# link budget / performance models
class NegativeLength(OptoLinkError, ValueError):
    pass


class ZeroRate(OptoLinkError, ValueError):
    pass


class ZeroLatency(OptoLinkError, ValueError):
    pass


class UnsupportedBitwidth(OptoLinkError, ValueError):
    pass


class OutOfRange(OptoLinkError, ValueError):
    pass


class InvalidCount(OptoLinkError, ValueError):
    pass


# simulation
class InvalidTopology(OptoLinkError, ValueError):
    pass


class InvalidWorkload(OptoLinkError, ValueError):
    pass


class ScenarioError(OptoLinkError, ValueError):
    """Scenario document failed schema validation."""
