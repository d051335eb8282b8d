"""Exception hierarchy shared by every module."""


class WitnessLabError(ValueError):
    """Base class for all library errors."""


class NonHermitian(WitnessLabError):
    pass


class NotSymmetric(WitnessLabError):
    pass


class NotAntisymmetric(WitnessLabError):
    pass


class DimensionMismatch(WitnessLabError):
    pass


class BadDimension(WitnessLabError):
    pass


class DimensionCap(WitnessLabError):
    """Raised when a two-copy operator would exceed the configured size cap."""


class UnsupportedSpec(WitnessLabError):
    pass


class SpecMismatch(WitnessLabError):
    pass


class DegenerateTop(WitnessLabError):
    """The top eigenspace of L could not be separated from the rest."""


class BadWeights(WitnessLabError):
    pass


class BadDecompositionSize(WitnessLabError):
    pass


class IndexOutOfRange(WitnessLabError):
    pass
