"""Exception types raised by swpclock."""


class SWPClockError(Exception):
    """Base class for all library errors."""


class NonPositiveWaveNumber(SWPClockError, ValueError):
    pass


class InvalidParameter(SWPClockError, ValueError):
    """A physical or numerical parameter violates its invariant."""


class DegenerateMatch(SWPClockError, ArithmeticError):
    """The matching system at the barrier edges is singular."""


class RegimeMismatch(SWPClockError, ValueError):
    """The operation is defined only for another energy regime."""


class TransmissionUndefined(SWPClockError, ValueError):
    """No transmitted wave exists: the energy is at or below the right level."""


class StepTooLarge(SWPClockError, ValueError):
    pass


class SymmetricBarrier(SWPClockError, ValueError):
    """A closed form that divides by the right level was asked for V1 = 0."""


class VanishingChannel(SWPClockError, ArithmeticError):
    """The post-selected channel carries (numerically) zero probability."""


class QuadratureFailure(SWPClockError, RuntimeError):
    """The adaptive rule did not reach the requested tolerance."""
