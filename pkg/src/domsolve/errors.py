"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class DomsolveError(Exception):
    """Base class for all errors raised by domsolve."""


class MalformedInputError(DomsolveError, ValueError):
    """Graph or instance data violates a structural requirement."""


class NotClusterGraphError(DomsolveError, ValueError):
    """The residual graph has an induced P3.

    ``witness`` is ``(a, b, c)`` with ``b`` adjacent to both ends and
    ``a``, ``c`` non-adjacent.
    """

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(f"not a cluster graph: induced P3 {witness}")


class NotSplitGraphError(DomsolveError, ValueError):
    """The residual graph contains an induced 2K2, C4 or C5."""

    def __init__(self, shape: str, witness: tuple[int, ...]):
        self.shape = shape
        self.witness = witness
        super().__init__(f"not a split graph: induced {shape} on {witness}")


class ContractError(DomsolveError, ValueError):
    """A documented precondition of an operation does not hold."""


class InstanceSyntaxError(DomsolveError, ValueError):
    """Instance or solution text could not be parsed."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class ModulatorMismatchError(DomsolveError, ValueError):
    """The recorded modulator does not have the property its kind claims."""


class OracleCapError(DomsolveError, ValueError):
    """A brute-force oracle was asked to enumerate beyond its size cap."""


class InvariantViolation(DomsolveError, RuntimeError):
    """An internal consistency check failed. This indicates a bug."""


class UnsupportedProblemError(DomsolveError, ValueError):
    """No exact parameterized algorithm exists for this (variant, modulator) pair."""
