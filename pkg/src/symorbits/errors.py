"""Exception hierarchy shared by every module."""


class SymOrbitsError(Exception):
    """Base class; ``code`` is the stable name used in CLI error JSON."""

    @property
    def code(self) -> str:
        return type(self).__name__


class UnsupportedFamily(SymOrbitsError):
    pass


class InvalidParams(SymOrbitsError):
    pass


class AlgebraMismatch(SymOrbitsError):
    pass


class NonCommutingInvolutions(SymOrbitsError):
    pass


class DegenerateSubspace(SymOrbitsError):
    pass


class UnsupportedSigma(SymOrbitsError):
    pass


class MaximalityNotReached(SymOrbitsError):
    pass


class ClusteringAmbiguous(SymOrbitsError):
    pass


class NormalizationSingular(SymOrbitsError):
    pass


class WNotInCartan(SymOrbitsError):
    pass


class SingularDirection(SymOrbitsError):
    pass


class NonAbelianSpan(SymOrbitsError):
    pass


class NonSemisimpleW(SymOrbitsError):
    pass


class DimensionGuard(SymOrbitsError):
    pass


class NewtonDivergence(SymOrbitsError):
    pass


class StepTooLarge(SymOrbitsError):
    pass
