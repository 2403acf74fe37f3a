"""nu-compare command implementation."""

from __future__ import annotations

from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from ...analysis import NuComparison
from ...config import RunConfig, resolve_run_config
from ...presentation import Presentation
from ...report import render_nu, write_output
from ...runs import load_presentation
from ..exit_codes import ExitCode
from .options import (
    add_enumeration_options,
    add_nu_options,
    add_output_options,
    add_source_options,
)


@dataclass
class NuCompareCommand:
    """Command that compares |nu/Delta| with |chi/R|."""

    run_nu_compare: Callable[[Presentation, RunConfig], NuComparison]
    printer: Callable[[str], None]
    environ: Mapping[str, str] | None = None

    def register(self, subparsers: _SubParsersAction[ArgumentParser]) -> ArgumentParser:
        parser = subparsers.add_parser(
            "nu-compare",
            help="Check |nu(G)|/|Delta(G)| = |chi(G)|/|R(G)|",
        )
        add_source_options(parser)
        add_enumeration_options(parser)
        parser.add_argument(
            "--element-limit",
            type=int,
            metavar="N",
            help="Largest group whose elements are listed (default 20000)",
        )
        add_nu_options(parser)
        add_output_options(parser)
        parser.set_defaults(command_handler=self.handle, command="nu-compare")
        return parser

    def handle(self, args: Namespace) -> int:
        cfg = resolve_run_config(vars(args), self.environ)
        presentation, _ = load_presentation(cfg)
        comparison = self.run_nu_compare(presentation, cfg)
        write_output(render_nu(comparison, cfg.output_format), cfg.out, self.printer)
        return ExitCode.OK if comparison.passed else ExitCode.CHECK_FAILED
