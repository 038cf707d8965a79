"""Exception taxonomy shared across the package.

Every error raised by the library derives from :class:`ReplicalcError` so
callers (including the CLI) can distinguish computation failures from plain
programming mistakes such as ``TypeError``.
"""


class ReplicalcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(ReplicalcError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateEvidenceError(ReplicalcError):
    """Evidence is identically zero, so no posterior can be formed."""


class IncompatibleGridsError(ReplicalcError):
    """Two curves that must share a grid were built on different grids."""


class ContradictoryEvidenceError(ReplicalcError):
    """A pointwise product of curves vanished everywhere."""


class InconsistentInputsError(ReplicalcError):
    """Scalar inputs that are individually valid but jointly impossible."""
