"""Exception hierarchy.

Every error raised by the library derives from :class:`MixboundError`, which
is itself a :class:`ValueError` so callers doing plain validation can catch
the builtin.
"""


class MixboundError(ValueError):
    pass


class EmptyProfile(MixboundError):
    pass


class AlphabetTooSmall(MixboundError):
    pass


class InternalInexactDivision(ArithmeticError):
    """The sphere-size recursion hit a non-integer quotient (a bug, never user error)."""


class RadiusOutOfRange(MixboundError):
    pass


class RadiusOutOfApplicableRange(MixboundError):
    pass


class DeltaOutOfRange(MixboundError):
    pass


class ArgOutOfRange(MixboundError):
    pass


class EntropyArgOutOfRange(MixboundError):
    pass


class PreconditionViolated(MixboundError):
    pass


class DOutOfRange(MixboundError):
    pass


class NotApplicable(MixboundError):
    pass


class IndexOutOfRange(MixboundError):
    pass


class ProfileMismatch(MixboundError):
    pass


class EmptyCode(MixboundError):
    pass


class EmptySubset(MixboundError):
    pass


class NoConvergence(RuntimeError):
    pass


class RadiusInapplicable(MixboundError):
    pass


class SpaceTooLarge(MixboundError):
    pass


class InvalidDistribution(MixboundError):
    pass
