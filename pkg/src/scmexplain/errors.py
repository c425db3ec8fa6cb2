"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """A positioned message attached to a rejected model or formula.

    ``line`` and ``column`` are 1-based; ``span`` is the length of the
    offending source text (0 when unknown).
    """

    severity: str
    message: str
    line: int = 0
    column: int = 0
    span: int = 0
    subject: str | None = None

    def __str__(self) -> str:
        where = f"{self.line}:{self.column}" if self.line else "-"
        return f"{where}: {self.severity}: {self.message}"

    def to_json(self) -> dict:
        return {
            "severity": self.severity,
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "span": self.span,
        }


class SCMError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(SCMError, ValueError):
    """A value lies outside the domain of its variable."""


class QueryError(SCMError, ValueError):
    """A query violates an operation's preconditions."""


class BudgetExceeded(SCMError):
    """An enumeration would evaluate more assignments than allowed."""

    def __init__(self, limit: int, requested: int):
        super().__init__(
            f"enumeration budget exceeded: {requested} assignments requested, "
            f"limit {limit}"
        )
        self.limit = limit
        self.requested = requested


class _DiagnosticError(SCMError):
    def __init__(self, diagnostics: list[Diagnostic]):
        if not diagnostics:
            raise ValueError("at least one diagnostic is required")
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class ParseError(_DiagnosticError):
    """Source text does not match the grammar or names unknown symbols."""


class ModelError(_DiagnosticError):
    """A model is syntactically fine but fails validation."""
