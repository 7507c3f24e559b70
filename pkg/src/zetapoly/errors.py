"""Exception types shared across the package.

Two failure families are kept apart on purpose: bad input that a caller can
fix (`ValidationError`) and a violated mathematical invariant that signals
corrupt data or a genuine bug (`ConsistencyError`).  The command line maps
them to distinct exit codes.
"""


class ValidationError(ValueError):
    """Input rejected before any computation ran."""


class ConsistencyError(ArithmeticError):
    """An exact cross-check that is mathematically guaranteed failed."""
