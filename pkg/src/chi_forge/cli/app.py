"""Command-line application wiring for the chi-forge CLI."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from ..analysis import ChiAnalysis, NuComparison
from ..config import RunConfig
from ..errors import ChiForgeError
from ..presentation import Presentation
from ..report import EnumerationReport, SurveyReport
from .commands.analyze import AnalyzeCommand
from .commands.enumerate_command import EnumerateCommand
from .commands.nu_compare import NuCompareCommand
from .commands.survey import SurveyCommand
from .exit_codes import ExitCode, exit_code_for

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def _print_stderr(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def configure_logging(verbose: bool) -> None:
    """Send library debug logging to stderr when ``verbose`` is set."""

    if verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format=LOG_FORMAT)


@dataclass
class CLI:
    """Container that owns the argument parser and command dispatch."""

    parser: argparse.ArgumentParser
    default_handler: Callable[[argparse.Namespace], int]
    error_printer: Callable[[str], None] = _print_stderr

    def parse_args(self, argv: Sequence[str] | None = None) -> argparse.Namespace:
        """Parse CLI arguments."""

        return self.parser.parse_args(argv)

    def run(self, args: argparse.Namespace) -> int:
        """Execute the handler for ``args`` and return the process exit code.

        Library errors are reported on stderr and mapped through
        :func:`~chi_forge.cli.exit_codes.exit_code_for`.
        """

        handler: Callable[[argparse.Namespace], int] = getattr(
            args, "command_handler", self.default_handler
        )
        configure_logging(bool(getattr(args, "verbose", False)))
        try:
            return int(handler(args))
        except ChiForgeError as exc:
            self.error_printer(f"error: {exc.reason}")
            return int(exit_code_for(exc))


def _register_commands(
    *,
    parser: argparse.ArgumentParser,
    commands: Iterable[
        EnumerateCommand | AnalyzeCommand | SurveyCommand | NuCompareCommand
    ],
) -> list[argparse.ArgumentParser]:
    subparsers = parser.add_subparsers(dest="command")
    return [command.register(subparsers) for command in commands]


def create_app(
    *,
    enumerate_runner: Callable[[Presentation, RunConfig], EnumerationReport],
    analyze_runner: Callable[
        [Presentation, RunConfig, tuple[int, ...] | None], ChiAnalysis
    ],
    survey_runner: Callable[[RunConfig], SurveyReport],
    nu_runner: Callable[[Presentation, RunConfig], NuComparison],
    printer: Callable[[str], None] = print,
    error_printer: Callable[[str], None] = _print_stderr,
    environ: Mapping[str, str] | None = None,
) -> CLI:
    """Construct the CLI with the provided dependencies."""

    parser = argparse.ArgumentParser(
        prog="chi-forge",
        description="Weak commutativity groups of finite presentations",
    )

    def show_help(_args: argparse.Namespace) -> int:
        parser.print_help(sys.stderr)
        return ExitCode.INPUT

    _register_commands(
        parser=parser,
        commands=(
            EnumerateCommand(enumerate_runner, printer, environ),
            AnalyzeCommand(analyze_runner, printer, environ),
            SurveyCommand(survey_runner, printer, environ),
            NuCompareCommand(nu_runner, printer, environ),
        ),
    )
    return CLI(parser=parser, default_handler=show_help, error_printer=error_printer)
