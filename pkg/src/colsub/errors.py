"""Exception hierarchy shared across the package.

Everything raised deliberately derives from ColsubError so callers (and the
CLI) can distinguish "you gave me bad input" from "this computation was
stopped by a resource cap" from a genuine bug (which stays an ordinary
Python exception / AssertionError).
"""


class ColsubError(Exception):
    """Base class for all errors raised deliberately by this package."""


class InputError(ColsubError):
    """Malformed or inconsistent input: bad rule files, ill-typed arguments,
    partitions that do not respect the substitution, etc."""


class PreconditionError(InputError):
    """A well-formed input that violates a documented precondition of the
    operation (e.g. asking for the height of a non-primitive substitution)."""


class ResourceBudgetError(ColsubError):
    """A computation exceeded an explicit element/iteration budget.  The
    message says which budget and how to raise it."""
