"""Run configuration resolved from defaults, environment and CLI flags."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

from .analysis import DEFAULT_ENGEL_MAX
from .cosets import DEFAULT_MAX_COSETS, Strategy
from .errors import ConfigError
from .permutations import DEFAULT_ELEMENT_LIMIT
from .weak_commutativity import RelatorScope

MAX_COSETS_ENV = "CHI_FORGE_MAX_COSETS"
# nu is built only for groups of order below this unless explicitly allowed.
NU_ORDER_GUARD = 12


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Everything a command needs to run, after all sources are merged."""

    command: str
    group: str | None = None
    file: Path | None = None
    max_cosets: int = DEFAULT_MAX_COSETS
    strategy: Strategy = Strategy.HLT
    nu_scope: RelatorScope = RelatorScope.ELEMENTS
    chi_scope: RelatorScope = RelatorScope.ELEMENTS
    engel_max: int = DEFAULT_ENGEL_MAX
    output_format: OutputFormat = OutputFormat.TEXT
    out: Path | None = None
    allow_large_nu: bool = False
    workers: int = 1
    show_permutations: bool = False
    element_limit: int = DEFAULT_ELEMENT_LIMIT
    verbose: bool = False

    @property
    def has_source(self) -> bool:
        return self.group is not None or self.file is not None

    def nu_allowed(self, order: int) -> bool:
        return self.allow_large_nu or order < NU_ORDER_GUARD


def _env_override(environ: Mapping[str, str], *names: str) -> str | None:
    for name in names:
        value = (environ.get(name) or "").strip()
        if value:
            return value
    return None


def _positive_int(name: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(
            reason=f"{name} must be an integer, got {value!r}",
            details={"name": name},
        ) from exc
    if number < 1:
        raise ConfigError(
            reason=f"{name} must be positive, got {number}", details={"name": name}
        )
    return number


def _choice(name: str, enum: type[Enum], value: Any) -> Any:
    try:
        return enum(value)
    except ValueError as exc:
        allowed = ", ".join(str(member.value) for member in enum)
        raise ConfigError(
            reason=f"{name} must be one of {allowed}, got {value!r}",
            details={"name": name},
        ) from exc


def resolve_run_config(
    args: Mapping[str, Any],
    environ: Mapping[str, str] | None = None,
) -> RunConfig:
    """Merge defaults, environment variables and explicit flags.

    ``args`` holds parsed flag values; ``None`` means the flag was not given.
    Flags win over the environment, which wins over built-in defaults.
    """

    environ = os.environ if environ is None else environ
    command = str(args.get("command") or "")

    merged: dict[str, Any] = {"max_cosets": DEFAULT_MAX_COSETS}
    env_max = _env_override(environ, MAX_COSETS_ENV)
    if env_max is not None:
        merged["max_cosets"] = _positive_int(MAX_COSETS_ENV, env_max)
    merged.update({key: value for key, value in args.items() if value is not None})

    group = merged.get("group")
    file = merged.get("file")
    if group is not None and file is not None:
        raise ConfigError(reason="--group and --file are mutually exclusive")
    single_group = command in {"enumerate", "analyze", "nu-compare"}
    if single_group and group is None and file is None:
        raise ConfigError(reason=f"{command} needs --group NAME or --file PATH")
    if command == "survey" and (group is not None or file is not None):
        raise ConfigError(reason="survey runs over the catalog and takes no group")

    engel_max = int(merged.get("engel_max", DEFAULT_ENGEL_MAX))
    if engel_max < 0:
        raise ConfigError(reason=f"--engel-max must not be negative, got {engel_max}")
    out = merged.get("out")

    return RunConfig(
        command=command,
        group=None if group is None else str(group),
        file=None if file is None else Path(file),
        max_cosets=_positive_int("max_cosets", merged["max_cosets"]),
        strategy=_choice("strategy", Strategy, merged.get("strategy", "hlt")),
        nu_scope=_choice("nu_scope", RelatorScope, merged.get("nu_scope", "elements")),
        chi_scope=_choice(
            "chi_scope", RelatorScope, merged.get("chi_scope", "elements")
        ),
        engel_max=engel_max,
        output_format=_choice("format", OutputFormat, merged.get("format", "text")),
        out=None if out is None else Path(out),
        allow_large_nu=bool(merged.get("allow_large_nu", False)),
        workers=_positive_int("workers", merged.get("workers", 1)),
        show_permutations=bool(merged.get("show_permutations", False)),
        element_limit=_positive_int(
            "element_limit", merged.get("element_limit", DEFAULT_ELEMENT_LIMIT)
        ),
        verbose=bool(merged.get("verbose", False)),
    )
