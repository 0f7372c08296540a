"""Shared exception types.

BudgetExceeded is the base for every "this would cost more than the caller
allowed" refusal; callers (and the CLI, which maps it to exit code 3) can
catch it uniformly.
"""


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget."""


class SpanCapExceeded(BudgetExceeded):
    """A span/coefficient enumeration is larger than its cap."""


class InvalidInstance(ValueError):
    """A side-information instance violates its structural constraints."""


class NotAnIndexCode(ValueError):
    """A matrix fails the linear index-code criterion for some receiver."""


class TooManyErrors(RuntimeError):
    """No error pattern within the decoding radius matches the syndrome."""
