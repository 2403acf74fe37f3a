"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from collections.abc import Mapping


class ChiForgeError(RuntimeError):
    """Base class for every error raised by chi-forge."""

    def __init__(
        self,
        *,
        reason: str,
        details: Mapping[str, object] | None = None,
    ) -> None:
        self.reason = reason
        self.details = dict(details or {})
        super().__init__(reason)

    @property
    def context(self) -> dict[str, object]:
        """Structured details describing the failure."""

        return dict(self.details)


class WordError(ChiForgeError, ValueError):
    """A word operation received arguments outside its domain."""


class PresentationError(ChiForgeError, ValueError):
    """A presentation violates its structural invariants."""


class PresentationSyntaxError(PresentationError):
    """The presentation text does not match the grammar."""

    def __init__(
        self,
        *,
        reason: str,
        line: int,
        column: int,
        details: Mapping[str, object] | None = None,
    ) -> None:
        self.line = line
        self.column = column
        super().__init__(
            reason=f"line {line}, column {column}: {reason}",
            details={"line": line, "column": column, **dict(details or {})},
        )


class UnknownGroupError(ChiForgeError, KeyError):
    """The requested group is not in the catalog."""

    def __str__(self) -> str:
        return self.reason


class ConfigError(ChiForgeError, ValueError):
    """A configuration value could not be resolved."""


class ResourceLimitError(ChiForgeError):
    """A computation would exceed a configured size limit."""

    def __init__(
        self,
        *,
        reason: str,
        limit: int,
        details: Mapping[str, object] | None = None,
    ) -> None:
        self.limit = limit
        super().__init__(reason=reason, details={"limit": limit, **dict(details or {})})


class CosetOverflowError(ResourceLimitError):
    """Coset enumeration needed more rows than ``max_cosets``."""

    def __init__(self, *, limit: int, defined: int) -> None:
        self.defined = defined
        super().__init__(
            reason=(
                f"coset table overflow at {limit} cosets; increase --max-cosets "
                "or the group may be too large"
            ),
            limit=limit,
            details={"defined": defined},
        )


class ElementLimitError(ResourceLimitError):
    """Listing the elements of a group would exceed the element limit."""

    def __init__(self, *, limit: int, order: int) -> None:
        self.order = order
        super().__init__(
            reason=f"group of order {order} exceeds the element limit {limit}",
            limit=limit,
            details={"order": order},
        )


class IncompleteTableError(ChiForgeError):
    """An operation needs a complete coset table."""


class MembershipError(ChiForgeError, ValueError):
    """An element or subgroup is not contained where it must be."""


class GroupStructureError(ChiForgeError, ValueError):
    """A group lacks a structural property an operation requires."""


class ElementMapError(ChiForgeError, ValueError):
    """An element-word map does not cover the group exactly."""


class PolicyRefusalError(ChiForgeError):
    """A run was refused by a size guard that can be overridden."""
