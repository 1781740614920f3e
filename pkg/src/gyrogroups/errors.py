"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GyroError(Exception):
    """Base class for all errors raised by :mod:`gyrogroups`."""


class TableFormatError(GyroError, ValueError):
    """A Cayley table (or its text rendering) is malformed.

    ``line`` and ``column`` are 1-based positions in the source text when the
    table came from a file, otherwise ``None``. ``kind`` names the rule that
    failed (``token``, ``row-count``, ``range``, ``identity`` ...).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 kind: str = "format"):
        self.line = line
        self.column = column
        self.kind = kind
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NotAGyrogroupError(GyroError):
    """A table failed axiom verification; ``report`` holds the witnesses."""

    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"table is not a gyrogroup (first violation: {first})")


class PreconditionError(GyroError, ValueError):
    pass


class CapabilityError(GyroError):
    """The requested computation exceeds the size bound of an exhaustive method."""


class ConsistencyError(GyroError):
    """A derived property that must hold by theorem was found violated."""


class HomomorphismError(GyroError, ValueError):
    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: witness {witness}")


class DomainError(GyroError, ValueError):
    """A point lies on or outside the boundary of a continuous model."""


class SingularityError(DomainError):
    pass
