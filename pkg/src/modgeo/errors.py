"""Exception hierarchy for modgeo."""


class ModgeoError(ValueError):
    pass


class NotHermitian(ModgeoError):
    pass


class NotPositiveDefinite(ModgeoError):
    pass


class SpectrumOutOfDomain(ModgeoError):
    pass


class DimensionMismatch(ModgeoError):
    pass


class NotDensity(ModgeoError):
    pass


class NotFaithful(ModgeoError):
    pass


class StripViolation(ModgeoError):
    pass


class QuadratureDivergence(ModgeoError):
    pass


class NotNormalized(ModgeoError):
    pass


class VanishingAmplitude(ModgeoError):
    pass


class ZeroScale(ModgeoError):
    pass


class TangentConditionFailed(ModgeoError):
    pass
