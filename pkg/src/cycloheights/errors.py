"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes: domain errors exit 2, resource
and search-cap errors exit 3.
"""


class CycloError(Exception):
    """Base class for all package errors."""


class DomainError(CycloError, ValueError):
    """An argument lies outside the domain of the operation."""


class SeriesOverflowError(CycloError, OverflowError):
    """A 64-bit coefficient update would wrap around."""

    def __init__(self, index, message=None):
        self.index = int(index)
        super().__init__(message or f"64-bit overflow at coefficient index {self.index}")


class ResourceError(CycloError):
    """A computation would exceed the configured buffer budget."""


class SearchExhaustedError(CycloError, LookupError):
    """A capped prime search found nothing below its cap."""

    def __init__(self, message, stage=None):
        self.stage = stage
        super().__init__(message if stage is None else f"[{stage}] {message}")


class ConsistencyError(CycloError, AssertionError):
    """An internal check that must never fail did fail."""
