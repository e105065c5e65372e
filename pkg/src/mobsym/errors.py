"""Exception types raised across the package."""


class MobsymError(Exception):
    """Base class for all package errors."""


class DegenerateInput(MobsymError, ValueError):
    def __init__(self, msg, pairs=()):
        super().__init__(msg)
        self.pairs = tuple(pairs)


class IdentityMap(MobsymError, ValueError):
    pass


class NotFiniteOrder(MobsymError, ValueError):
    pass


class AnchorNotFixed(MobsymError, ValueError):
    pass


class InfiniteStabilizer(MobsymError, ValueError):
    pass


class ToleranceBreakdown(MobsymError, ArithmeticError):
    pass


class NotInvariant(MobsymError, ValueError):
    pass


class UnrecognizedGroup(MobsymError, ValueError):
    pass


class ClosureFailure(MobsymError, RuntimeError):
    pass


class NotInvariantUnderGroup(MobsymError, ValueError):
    pass


class SeedOnExceptionalOrbit(MobsymError, ValueError):
    pass


class InvalidRecipe(MobsymError, ValueError):
    pass


class NotInKn(MobsymError, ValueError):
    pass


class UnsupportedSigma(MobsymError, ValueError):
    pass


class StepTooLarge(MobsymError, ValueError):
    pass


class NotStabilizerElement(MobsymError, ValueError):
    pass


class InconsistentContext(MobsymError, ValueError):
    pass


class TrivialStabilizer(MobsymError, ValueError):
    pass


class NonIntegralMultiplicity(MobsymError, ArithmeticError):
    pass


class InvalidLabel(MobsymError, ValueError):
    pass


class InconsistentCensus(MobsymError, RuntimeError):
    pass


class DegenerateLambda(MobsymError, ValueError):
    pass
