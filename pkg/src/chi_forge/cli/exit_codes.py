"""Process exit codes; a stable contract for scripts."""

from __future__ import annotations

from enum import IntEnum

from .. import errors
from ..errors import (
    ChiForgeError,
    ConfigError,
    PolicyRefusalError,
    PresentationError,
    ResourceLimitError,
    UnknownGroupError,
    WordError,
)


class ExitCode(IntEnum):
    OK = 0
    INTERNAL = 1
    INPUT = 2
    RESOURCE = 3
    CHECK_FAILED = 4
    POLICY = 5


_EXIT_CODES: tuple[tuple[type[ChiForgeError], ExitCode], ...] = (
    (WordError, ExitCode.INPUT),
    (PresentationError, ExitCode.INPUT),
    (UnknownGroupError, ExitCode.INPUT),
    (ConfigError, ExitCode.INPUT),
    (ResourceLimitError, ExitCode.RESOURCE),
    (PolicyRefusalError, ExitCode.POLICY),
)


def exit_code_for(exc: ChiForgeError | type[ChiForgeError]) -> ExitCode:
    """Map an error (or its class) to the exit code of the process."""

    kind = exc if isinstance(exc, type) else type(exc)
    for base, code in _EXIT_CODES:
        if issubclass(kind, base):
            return code
    return ExitCode.INTERNAL


def exit_code_for_kind(kind: str) -> ExitCode:
    """Exit code for an error known only by its class name."""

    cls = getattr(errors, kind, None)
    if isinstance(cls, type) and issubclass(cls, ChiForgeError):
        return exit_code_for(cls)
    return ExitCode.INTERNAL
