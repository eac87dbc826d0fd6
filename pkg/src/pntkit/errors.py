"""Exception types shared across the package."""


class PntkitError(Exception):
    """Base class for all package errors."""


class InvalidRangeError(PntkitError, ValueError):
    """Interval or range arguments are malformed (e.g. lo >= hi)."""


class BudgetExceededError(PntkitError):
    """Requested computation exceeds the configured work budget."""

    def __init__(self, message, *, needed=None, budget=None, partial=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget
        self.partial = partial


class SigmaRangeError(PntkitError, ValueError):
    """sigma outside the admissible (1, 16] range."""


class EmptySetError(PntkitError, ValueError):
    """Average requested over an empty set."""


class UndefinedValueError(PntkitError, KeyError):
    """Function table has no value for a requested point."""


class NoWitnessError(PntkitError):
    """Window search found no admissible witness pair."""


class HypothesisViolationError(PntkitError):
    """A membership oracle failed to supply points its contract promises."""


class PairingError(PntkitError):
    """Set pair lacks the paired enumeration needed for an audit."""


class ConstructionError(PntkitError):
    """Internal consistency check of the set-pair construction failed."""


class InfeasibleScaleError(PntkitError):
    """Construction parameters demand materialization beyond any budget.

    Carries a ``diagnosis`` dict with the offending quantities so callers can
    report why the run cannot proceed.
    """

    def __init__(self, message, *, diagnosis=None, partial=None):
        super().__init__(message)
        self.diagnosis = diagnosis or {}
        self.partial = partial


class ConfigError(PntkitError, ValueError):
    """CLI / config file is invalid."""
