"""Exception types shared across the package."""


class NullcertError(Exception):
    """Base class for domain errors raised by this package."""


class EmptyPointSetError(NullcertError):
    """A hull or Newton polytope was requested for an empty point set."""


class DimensionMismatchError(NullcertError):
    """Operands live in different ambient dimensions."""


class NonGradedSetError(NullcertError):
    """A point set has no integral grading witness."""


class NotOrdinaryPolynomialError(NullcertError):
    """An operation requiring ordinary (non-Laurent) input got a Laurent polynomial."""


class NonHomogeneousError(NullcertError):
    """An operation requiring homogeneous input got a non-homogeneous polynomial."""


class EmptyPlanError(NullcertError):
    """A support plan has no admissible cofactor monomial for any nonzero polynomial."""


class UnreachableTargetError(NullcertError):
    """A target monomial lies outside the plan's reachable support; the system is
    provably infeasible without solving."""

    def __init__(self, monomial):
        super().__init__(f"target monomial {monomial} is unreachable under the plan")
        self.monomial = monomial


class BudgetExceededError(NullcertError):
    """A resource guard tripped (unknown count, pair count, ...).  Distinct from
    infeasibility: nothing was decided."""


class NoCertificateWithinBudgetError(NullcertError):
    """An exhaustive scan up to the stated budget found no certificate."""
