"""Exceptions raised by the simulator."""


class AbfluxError(ValueError):
    """Base class for domain errors."""


class AllZeroAmplitudes(AbfluxError):
    pass


class NonFiniteInput(AbfluxError):
    pass


class OrthogonalPostSelection(AbfluxError):
    """The post-selected state has (numerically) zero overlap with the pre-selection."""


class UnequalArms(AbfluxError):
    pass


class NonpositiveRadius(AbfluxError):
    pass


class AngleOutOfRange(AbfluxError):
    pass
