"""Exception types raised by the solver components."""


class SolverError(Exception):
    """Base class for all domain errors in this package."""


# instance construction / transforms
class EmptyInstance(SolverError):
    pass


class NegativeEntry(SolverError):
    pass


class DeltaOutOfRange(SolverError):
    pass


class DimensionTooSmall(SolverError):
    pass


class ModeMismatch(SolverError):
    pass


class InvalidHittingSet(SolverError):
    pass


class FormatError(SolverError):
    """Malformed instance or result document; no repair is attempted."""


# follower oracle
class DimensionMismatch(SolverError):
    pass


class NotSorted(SolverError):
    pass


class MissingDummy(SolverError):
    pass


# exact bilevel oracle
class InstanceTooLarge(SolverError):
    pass


# LP engine
class LPInfeasible(SolverError):
    pass


class LPUnbounded(SolverError):
    pass


class SeparatorContradiction(SolverError):
    """The separator rejected a point that satisfies its own earlier cut."""


# approximation pipelines
class UnsortedItems(SolverError):
    pass


class DanglingCritical(SolverError):
    pass


class NotExtremePoint(SolverError):
    pass


class WrongDimension(SolverError):
    pass


class EpsilonOutOfRange(SolverError):
    pass


class BudgetViolation(SolverError):
    pass


class TauOutOfRange(SolverError):
    pass


class ZeroResidual(SolverError):
    pass


class DanglingSubgroup(SolverError):
    pass


class AlphaOutOfRange(SolverError):
    pass


# bench harness
class UnknownSuite(SolverError):
    pass
