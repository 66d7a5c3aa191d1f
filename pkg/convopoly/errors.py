"""
Exception hierarchy shared by the library and the CLI.

Every error also subclasses the builtin it refines, so callers that only
know about ValueError or RuntimeError keep working.
"""


class ConvopolyError(Exception):
    """Base class for all convopoly errors."""

    exit_code = 1


class InvalidArgumentError(ConvopolyError, ValueError):
    """An argument is outside the accepted domain."""

    exit_code = 2


class FlowConservationError(InvalidArgumentError):
    """A weighted graph does not balance in-weight and out-weight."""


class CapExceededError(ConvopolyError, RuntimeError):
    """A configured size ceiling would be exceeded."""

    exit_code = 3


class MalformedInputError(ConvopolyError, ValueError):
    """An input document could not be parsed or is inconsistent."""

    exit_code = 4


class InvariantViolationError(ConvopolyError, RuntimeError):
    """An internal invariant failed; this indicates a bug."""

    exit_code = 5
