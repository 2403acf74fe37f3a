"""Survey command implementation."""

from __future__ import annotations

from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from ...config import RunConfig, resolve_run_config
from ...report import SurveyReport, render_survey, write_output
from ..exit_codes import ExitCode, exit_code_for_kind
from .options import (
    add_analysis_options,
    add_enumeration_options,
    add_nu_options,
    add_output_options,
)


@dataclass
class SurveyCommand:
    """Command that analyzes every catalog group."""

    run_survey: Callable[[RunConfig], SurveyReport]
    printer: Callable[[str], None]
    environ: Mapping[str, str] | None = None

    def register(self, subparsers: _SubParsersAction[ArgumentParser]) -> ArgumentParser:
        parser = subparsers.add_parser(
            "survey",
            help="Analyze the whole catalog, one row per group",
        )
        add_enumeration_options(parser)
        add_analysis_options(parser)
        add_nu_options(parser)
        parser.add_argument(
            "--workers",
            type=int,
            metavar="N",
            help="Analyze groups in N worker processes (default 1)",
        )
        add_output_options(parser)
        parser.set_defaults(command_handler=self.handle, command="survey")
        return parser

    def handle(self, args: Namespace) -> int:
        cfg = resolve_run_config(vars(args), self.environ)
        report = self.run_survey(cfg)
        write_output(render_survey(report, cfg.output_format), cfg.out, self.printer)
        if report.errored:
            return max(
                exit_code_for_kind(str(row.error.context.get("error", "")))
                for row in report.rows
                if row.error is not None
            )
        return ExitCode.OK if report.all_checks_pass else ExitCode.CHECK_FAILED
