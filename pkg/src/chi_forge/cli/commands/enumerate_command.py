"""Enumerate command implementation."""

from __future__ import annotations

from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from ...config import RunConfig, resolve_run_config
from ...presentation import Presentation
from ...report import EnumerationReport, render_enumeration, write_output
from ...runs import load_presentation
from ..exit_codes import ExitCode
from .options import add_enumeration_options, add_output_options, add_source_options


@dataclass
class EnumerateCommand:
    """Command that counts the elements of a presented group."""

    run_enumerate: Callable[[Presentation, RunConfig], EnumerationReport]
    printer: Callable[[str], None]
    environ: Mapping[str, str] | None = None

    def register(self, subparsers: _SubParsersAction[ArgumentParser]) -> ArgumentParser:
        parser = subparsers.add_parser(
            "enumerate",
            help="Run coset enumeration over the trivial subgroup",
        )
        add_source_options(parser)
        add_enumeration_options(parser)
        parser.add_argument(
            "--show-permutations",
            action="store_true",
            default=None,
            help="Print the regular permutation image of every generator",
        )
        add_output_options(parser)
        parser.set_defaults(command_handler=self.handle, command="enumerate")
        return parser

    def handle(self, args: Namespace) -> int:
        cfg = resolve_run_config(vars(args), self.environ)
        presentation, _ = load_presentation(cfg)
        report = self.run_enumerate(presentation, cfg)
        write_output(
            render_enumeration(report, cfg.output_format), cfg.out, self.printer
        )
        return ExitCode.OK
