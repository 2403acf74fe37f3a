"""Command-line interface for chi-forge."""

from __future__ import annotations

from .app import CLI, create_app
from .exit_codes import ExitCode, exit_code_for

__all__ = ["CLI", "ExitCode", "create_app", "exit_code_for"]
