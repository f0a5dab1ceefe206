"""Shared exception types."""


class CapExceededError(RuntimeError):
    """An input is larger than the configured desk-scale cap."""


class ConnectivityError(ValueError):
    """A connectivity precondition (connected / 2-connected) does not hold."""


class CheckFailedError(RuntimeError):
    """A correctness check found a counterexample."""
