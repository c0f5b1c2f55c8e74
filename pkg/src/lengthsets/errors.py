"""Exception types shared across the package.

Domain violations map to CLI exit code 2, exhausted search budgets to 3.
Internal invariant failures are loud RuntimeErrors: they indicate a bug or a
broken construction, never a recoverable input problem.
"""

from __future__ import annotations


class DomainViolation(ValueError):
    """An operation was called outside its stated domain."""


class NotInMonoid(DomainViolation):
    """An element is provably not a member; carries the obstruction found."""

    def __init__(self, message: str, evidence: dict | None = None):
        super().__init__(message)
        self.evidence = dict(evidence or {})


class UnsupportedConfiguration(DomainViolation):
    """The requested operation is not defined for this configuration."""


class BudgetExhausted(RuntimeError):
    """A bounded search ran out of budget; carries the search frontier."""

    def __init__(self, message: str, frontier: dict | None = None):
        super().__init__(message)
        self.frontier = dict(frontier or {})


class ConstructionFailure(RuntimeError):
    """A staged construction failed one of its verified postconditions."""
