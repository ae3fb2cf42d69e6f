"""Exception types and result sentinels shared by every module."""

import enum


class TowerError(Exception):
    """Base class for all errors raised by eqtowers."""


class PreconditionError(TowerError, ValueError):
    """An operation was called outside its documented domain."""


class SchemaError(TowerError, ValueError):
    """Serialized input is malformed or violates a type invariant."""


class NoWitnessFound(TowerError):
    """A best-effort extraction ran below its guaranteed width and failed.

    This is an outcome, not a bug: the inputs were legal, the search simply
    came up empty.
    """


class Unresolved(enum.Enum):
    """Explicit sentinels for bounded searches that did not settle."""

    EXCEEDS_CAP = "exceeds cap"
    NONE_UP_TO_BOUND = "none up to bound"

    def __str__(self):
        return self.value
