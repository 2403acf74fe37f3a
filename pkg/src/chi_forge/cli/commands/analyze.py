"""Analyze command implementation."""

from __future__ import annotations

from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from ...analysis import ChiAnalysis
from ...config import RunConfig, resolve_run_config
from ...presentation import Presentation
from ...report import render_analysis, write_output
from ...runs import load_presentation
from ..exit_codes import ExitCode
from .options import (
    add_analysis_options,
    add_enumeration_options,
    add_nu_options,
    add_output_options,
    add_source_options,
)


@dataclass
class AnalyzeCommand:
    """Command that builds chi(G) and runs every structural check."""

    run_analyze: Callable[
        [Presentation, RunConfig, tuple[int, ...] | None], ChiAnalysis
    ]
    printer: Callable[[str], None]
    environ: Mapping[str, str] | None = None

    def register(self, subparsers: _SubParsersAction[ArgumentParser]) -> ArgumentParser:
        parser = subparsers.add_parser(
            "analyze",
            help="Build chi(G), its subgroup lattice and the structural checks",
            description=(
                "Exits 0 when every check passes and 4 when any check fails; "
                "a failed check is a result, not an error."
            ),
        )
        add_source_options(parser)
        add_enumeration_options(parser)
        add_analysis_options(parser)
        add_nu_options(parser)
        add_output_options(parser)
        parser.set_defaults(command_handler=self.handle, command="analyze")
        return parser

    def handle(self, args: Namespace) -> int:
        cfg = resolve_run_config(vars(args), self.environ)
        presentation, multiplier = load_presentation(cfg)
        analysis = self.run_analyze(presentation, cfg, multiplier)
        write_output(
            render_analysis(analysis, cfg.output_format), cfg.out, self.printer
        )
        return ExitCode.OK if analysis.all_checks_pass else ExitCode.CHECK_FAILED
