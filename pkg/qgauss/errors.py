"""Exception hierarchy shared by the library and the CLI."""
from __future__ import annotations

from typing import TYPE_CHECKING, Sequence, Tuple

if TYPE_CHECKING:  # pragma: no cover
    from .bounds.guards import SizingReport


class QGaussError(ValueError):
    """Base class for every error raised on bad input or refused work."""


class DomainError(QGaussError):
    """A numeric precondition (q range, exponent, grid, index) does not hold."""


class ParseError(QGaussError):
    """The polynomial text does not conform to the grammar."""

    def __init__(self, message: str, position: int) -> None:
        self.message = message
        self.position = position
        super().__init__(f"{message} at position {position}")


class NotSelfAdjointError(QGaussError):
    """An operation requiring P* = P received an asymmetric polynomial."""

    def __init__(self, terms: Sequence[str]) -> None:
        self.terms: Tuple[str, ...] = tuple(terms)
        listed = ", ".join(self.terms) if self.terms else "<none>"
        super().__init__(f"polynomial is not self-adjoint; asymmetric terms: {listed}")


class BudgetExceeded(QGaussError):
    """The estimated working set exceeds the configured resource budget."""

    def __init__(self, report: "SizingReport") -> None:
        self.report = report
        super().__init__(report.describe())
