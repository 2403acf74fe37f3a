"""Unified command-line interface for chi-forge."""

from __future__ import annotations

import sys
from collections.abc import Callable, Sequence

from . import runs, survey
from .cli import CLI, create_app


def build_app(*, printer: Callable[[str], None] = print) -> CLI:
    """Create the CLI wired up with the production dependencies."""

    return create_app(
        enumerate_runner=runs.run_enumerate,
        analyze_runner=runs.run_analyze,
        survey_runner=survey.run_survey,
        nu_runner=runs.run_nu_compare,
        printer=printer,
    )


def main(
    argv: Sequence[str] | None = None,
    *,
    printer: Callable[[str], None] = print,
) -> int:
    """Entrypoint for ``python -m chi_forge`` and the ``chi-forge`` script."""

    app = build_app(printer=printer)
    return app.run(app.parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
