"""Exception hierarchy shared by all sumprod modules."""


class SumprodError(Exception):
    """Base class for every error raised by the library."""


# ring construction / arithmetic
class NonPrimeModulus(SumprodError):
    pass


class ReducibleModulus(SumprodError):
    pass


class SizeLimitExceeded(SumprodError):
    pass


class MalformedTable(SumprodError):
    pass


class IndexOutOfRange(SumprodError, IndexError):
    pass


# set arithmetic
class RingMismatch(SumprodError):
    pass


class ZeroProductPower(SumprodError):
    pass


class EmptySet(SumprodError):
    pass


class PowerTooLarge(SumprodError):
    pass


# theorem pipelines
class HypothesisViolated(SumprodError):
    """Growth hypotheses of a lemma or theorem do not hold for the input."""


class NotNonZeroDivisors(SumprodError):
    pass


class NotNonZeroDivisor(SumprodError):
    pass


class NotInvertible(SumprodError):
    pass


class NoIdentity(SumprodError):
    pass


class NoStabilization(SumprodError):
    pass


class BijectivityFailure(SumprodError):
    pass


class SolveFailure(SumprodError):
    pass


class NotCyclicPrimePower(SumprodError):
    pass


class NotDivisionRing(SumprodError):
    pass


class NotProductOfFields(SumprodError):
    pass


class NotPrimeFieldAlgebra(SumprodError):
    pass


class TooLarge(SumprodError):
    pass


class NotM2(SumprodError):
    pass


# harness
class ConfigParse(SumprodError):
    pass


class EmptySweep(SumprodError):
    pass
